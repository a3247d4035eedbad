#include "mpctrf/network.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "mpctrf/errors.hpp"

namespace mpctrf {

using nlohmann::json;

Network::Network(std::vector<std::string> node_names, int source, int sink,
                 std::vector<Arc> arcs)
    : node_names_(std::move(node_names)),
      source_(source),
      sink_(sink),
      arcs_(std::move(arcs)) {
  if (node_names_.empty()) {
    fail(ErrorKind::Validation, "network has no nodes");
  }
  std::unordered_set<std::string> seen;
  for (const auto& name : node_names_) {
    if (name.empty()) fail(ErrorKind::Validation, "empty node name");
    if (!seen.insert(name).second) {
      fail(ErrorKind::Validation, "duplicate node name '" + name + "'");
    }
  }
  const int n = node_count();
  auto check_node = [&](int v, const char* what) {
    if (v < 0 || v >= n) {
      fail(ErrorKind::Validation,
           std::string(what) + " index " + std::to_string(v) + " out of range");
    }
  };
  check_node(source_, "source");
  check_node(sink_, "sink");
  if (source_ == sink_) {
    fail(ErrorKind::Validation, "source and sink must differ");
  }
  out_.resize(n);
  in_.resize(n);
  for (int a = 0; a < arc_count(); ++a) {
    const Arc& arc = arcs_[a];
    check_node(arc.tail, "arc tail");
    check_node(arc.head, "arc head");
    if (arc.tail == arc.head) {
      fail(ErrorKind::Validation, "self-loop at arc " + std::to_string(a));
    }
    if (arc.capacity < 0) {
      fail(ErrorKind::Validation, "negative capacity at arc " + std::to_string(a));
    }
    if (arc.transit < 0) {
      fail(ErrorKind::Validation, "negative transit at arc " + std::to_string(a));
    }
    if (arc.cost < 0) {
      fail(ErrorKind::Validation, "negative cost at arc " + std::to_string(a));
    }
    out_[arc.tail].push_back(a);
    in_[arc.head].push_back(a);
  }
}

int Network::node_index(const std::string& name) const {
  for (int v = 0; v < node_count(); ++v) {
    if (node_names_[v] == name) return v;
  }
  return -1;
}

bool Network::unit_cost() const {
  return std::all_of(arcs_.begin(), arcs_.end(),
                     [](const Arc& a) { return a.cost == 1; });
}

namespace {

std::vector<char> reach(const Network& net, int start, bool forward) {
  std::vector<char> seen(net.node_count(), 0);
  std::deque<int> queue{start};
  seen[start] = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    const auto& arcs = forward ? net.out_arcs(v) : net.in_arcs(v);
    for (int a : arcs) {
      int w = forward ? net.arc(a).head : net.arc(a).tail;
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  }
  return seen;
}

}  // namespace

bool Network::core_acyclic() const {
  auto from_s = reach(*this, source_, true);
  auto to_t = reach(*this, sink_, false);
  std::vector<char> core(node_count());
  for (int v = 0; v < node_count(); ++v) core[v] = from_s[v] && to_t[v];

  std::vector<int> indeg(node_count(), 0);
  int core_nodes = 0;
  for (int v = 0; v < node_count(); ++v) {
    if (core[v]) ++core_nodes;
  }
  for (const Arc& a : arcs_) {
    if (core[a.tail] && core[a.head]) ++indeg[a.head];
  }
  std::deque<int> queue;
  for (int v = 0; v < node_count(); ++v) {
    if (core[v] && indeg[v] == 0) queue.push_back(v);
  }
  int sorted = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    ++sorted;
    for (int a : out_[v]) {
      int w = arcs_[a].head;
      if (core[w] && --indeg[w] == 0) queue.push_back(w);
    }
  }
  return sorted == core_nodes;
}

Int Network::source_out_capacity() const {
  Int total = 0;
  for (int a : out_[source_]) total += arcs_[a].capacity;
  return total;
}

namespace {

Int json_to_int(const json& j, const std::string& where) {
  if (j.is_number_integer()) {
    return Int(j.get<long long>());
  }
  if (j.is_string()) {
    Rat r = parse_rational(j.get<std::string>());
    if (!is_integral(r)) {
      fail(ErrorKind::Parse, where + " must be an integer, got " +
                                 rat_to_string(r));
    }
    return numerator(r);
  }
  fail(ErrorKind::Parse, where + " must be an integer or integer string");
}

Rat json_to_rat(const json& j, const std::string& where) {
  if (j.is_number_integer()) {
    return Rat(Int(j.get<long long>()));
  }
  if (j.is_string()) {
    return parse_rational(j.get<std::string>());
  }
  fail(ErrorKind::Parse, where + " must be an integer or 'p/q' string");
}

const json& require(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) {
    fail(ErrorKind::Parse, std::string("missing field '") + key + "'");
  }
  return *it;
}

json int_to_json(const Int& v) {
  if (v >= std::numeric_limits<long long>::min() &&
      v <= std::numeric_limits<long long>::max()) {
    return static_cast<long long>(v);
  }
  return v.str();
}

}  // namespace

Instance parse_instance(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorKind::Parse, "instance must be an object");

  const json& jnodes = require(doc, "nodes");
  if (!jnodes.is_array()) fail(ErrorKind::Parse, "nodes must be an array");
  std::vector<std::string> names;
  std::unordered_map<std::string, int> index;
  for (const auto& jn : jnodes) {
    if (!jn.is_string()) fail(ErrorKind::Parse, "node names must be strings");
    std::string name = jn.get<std::string>();
    if (!index.emplace(name, static_cast<int>(names.size())).second) {
      fail(ErrorKind::Validation, "duplicate node name '" + name + "'");
    }
    names.push_back(std::move(name));
  }

  auto node_ref = [&](const json& j, const std::string& where) {
    if (!j.is_string()) fail(ErrorKind::Parse, where + " must be a node name");
    auto it = index.find(j.get<std::string>());
    if (it == index.end()) {
      fail(ErrorKind::Validation,
           where + " names unknown node '" + j.get<std::string>() + "'");
    }
    return it->second;
  };

  int source = node_ref(require(doc, "source"), "source");
  int sink = node_ref(require(doc, "sink"), "sink");

  const json& jarcs = require(doc, "arcs");
  if (!jarcs.is_array()) fail(ErrorKind::Parse, "arcs must be an array");
  std::vector<Arc> arcs;
  int idx = 0;
  for (const auto& ja : jarcs) {
    if (!ja.is_object()) fail(ErrorKind::Parse, "each arc must be an object");
    std::string at = "arc " + std::to_string(idx);
    Arc arc;
    arc.tail = node_ref(require(ja, "tail"), at + " tail");
    arc.head = node_ref(require(ja, "head"), at + " head");
    arc.capacity = json_to_int(require(ja, "capacity"), at + " capacity");
    arc.transit = json_to_int(require(ja, "transit"), at + " transit");
    arc.cost = json_to_int(require(ja, "cost"), at + " cost");
    arcs.push_back(std::move(arc));
    ++idx;
  }

  Int horizon = json_to_int(require(doc, "horizon"), "horizon");
  if (horizon < 0) fail(ErrorKind::Validation, "horizon must be nonnegative");
  Rat demand = json_to_rat(require(doc, "demand"), "demand");
  if (demand < 0) fail(ErrorKind::Validation, "demand must be nonnegative");

  Network net(std::move(names), source, sink, std::move(arcs));
  return Instance{std::move(net), std::move(horizon), std::move(demand)};
}

std::string serialize_instance(const Instance& inst) {
  const Network& net = inst.network;
  json doc;
  doc["nodes"] = net.node_names();
  doc["source"] = net.node_name(net.source());
  doc["sink"] = net.node_name(net.sink());
  json jarcs = json::array();
  for (const Arc& a : net.arcs()) {
    jarcs.push_back({{"tail", net.node_name(a.tail)},
                     {"head", net.node_name(a.head)},
                     {"capacity", int_to_json(a.capacity)},
                     {"transit", int_to_json(a.transit)},
                     {"cost", int_to_json(a.cost)}});
  }
  doc["arcs"] = std::move(jarcs);
  doc["horizon"] = int_to_json(inst.horizon);
  doc["demand"] = rat_to_string(inst.demand);
  return doc.dump(2) + "\n";
}

}  // namespace mpctrf
