#include "mpctrf/paths.hpp"

#include <algorithm>
#include <deque>

#include "mpctrf/errors.hpp"

namespace mpctrf {

Path::Path(const Network& net, std::vector<int> arcs) : arcs_(std::move(arcs)) {
  if (arcs_.empty()) fail(ErrorKind::Validation, "empty path");
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    if (arcs_[i] < 0 || arcs_[i] >= net.arc_count()) {
      fail(ErrorKind::Validation,
           "path arc index " + std::to_string(arcs_[i]) + " out of range");
    }
    if (i > 0 && net.arc(arcs_[i]).tail != net.arc(arcs_[i - 1]).head) {
      fail(ErrorKind::Validation,
           "path arcs not contiguous at position " + std::to_string(i));
    }
  }
  nodes_.push_back(net.arc(arcs_.front()).tail);
  transit_ = 0;
  for (int a : arcs_) {
    prefix_.push_back(transit_);
    transit_ += net.arc(a).transit;
    nodes_.push_back(net.arc(a).head);
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes_.size(); ++j) {
      if (nodes_[i] == nodes_[j] &&
          !(i == 0 && j + 1 == nodes_.size())) {
        fail(ErrorKind::Validation, "path repeats node " +
                                        net.node_name(nodes_[i]));
      }
    }
  }
}

bool Path::is_source_sink(const Network& net) const {
  return nodes_.front() == net.source() && nodes_.back() == net.sink();
}

bool Path::contains_arc(int a) const {
  return std::find(arcs_.begin(), arcs_.end(), a) != arcs_.end();
}

int Path::arc_position(int a) const {
  auto it = std::find(arcs_.begin(), arcs_.end(), a);
  if (it == arcs_.end()) return -1;
  return static_cast<int>(it - arcs_.begin());
}

Int path_weight(const Path& p, const Int& horizon) {
  if (p.transit() > horizon) {
    fail(ErrorKind::HorizonExceeded,
         "path transit " + int_to_string(p.transit()) + " exceeds horizon " +
             int_to_string(horizon));
  }
  Int other = horizon - p.transit();
  return p.transit() < other ? p.transit() : other;
}

const char* horizon_class_name(HorizonClass h) {
  switch (h) {
    case HorizonClass::Short: return "Short";
    case HorizonClass::Long: return "Long";
    case HorizonClass::Mixed: return "Mixed";
    case HorizonClass::Unknown: return "Unknown";
  }
  return "?";
}

namespace {

std::vector<char> reachable(const Network& net, int start, bool forward) {
  std::vector<char> seen(net.node_count(), 0);
  std::deque<int> queue{start};
  seen[start] = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int a : forward ? net.out_arcs(v) : net.in_arcs(v)) {
      int w = forward ? net.arc(a).head : net.arc(a).tail;
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  }
  return seen;
}

// Topological order of the core nodes; empty when the core has a cycle.
std::vector<int> core_topo_order(const Network& net,
                                 const std::vector<char>& core) {
  std::vector<int> indeg(net.node_count(), 0);
  int core_nodes = 0;
  for (int v = 0; v < net.node_count(); ++v)
    if (core[v]) ++core_nodes;
  for (const Arc& a : net.arcs())
    if (core[a.tail] && core[a.head]) ++indeg[a.head];
  std::deque<int> queue;
  for (int v = 0; v < net.node_count(); ++v)
    if (core[v] && indeg[v] == 0) queue.push_back(v);
  std::vector<int> order;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    order.push_back(v);
    for (int a : net.out_arcs(v)) {
      int w = net.arc(a).head;
      if (core[w] && --indeg[w] == 0) queue.push_back(w);
    }
  }
  if (static_cast<int>(order.size()) != core_nodes) order.clear();
  return order;
}

// Shortest transit from source to sink over core arcs (Dijkstra; transits
// are nonnegative, so the shortest walk is a simple path).
Int shortest_transit(const Network& net, const std::vector<char>& core) {
  const int n = net.node_count();
  std::vector<Rat> dist(n);
  std::vector<char> done(n, 0), set(n, 0);
  dist[net.source()] = 0;
  set[net.source()] = 1;
  for (;;) {
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (set[v] && !done[v] && (best < 0 || dist[v] < dist[best])) best = v;
    }
    if (best < 0) break;
    done[best] = 1;
    for (int a : net.out_arcs(best)) {
      const Arc& arc = net.arc(a);
      if (!core[arc.head]) continue;
      Rat cand = dist[best] + Rat(arc.transit);
      if (!set[arc.head] || cand < dist[arc.head]) {
        set[arc.head] = 1;
        dist[arc.head] = cand;
      }
    }
  }
  return to_int(dist[net.sink()]);
}

}  // namespace

HorizonClass classify_horizon(const Instance& inst) {
  const Network& net = inst.network;
  auto from_s = reachable(net, net.source(), true);
  if (!from_s[net.sink()]) {
    fail(ErrorKind::NoPath, "sink unreachable from source");
  }
  auto to_t = reachable(net, net.sink(), false);
  std::vector<char> core(net.node_count(), 0);
  for (int v = 0; v < net.node_count(); ++v) core[v] = from_s[v] && to_t[v];

  const Int twoT = inst.horizon;
  auto order = core_topo_order(net, core);
  if (!order.empty()) {
    // Acyclic core: exact longest and shortest source-sink transits.
    std::vector<Int> longest(net.node_count()), shortest(net.node_count());
    std::vector<char> set(net.node_count(), 0);
    set[net.source()] = 1;
    for (int v : order) {
      if (!set[v]) continue;
      for (int a : net.out_arcs(v)) {
        const Arc& arc = net.arc(a);
        if (!core[arc.head]) continue;
        Int lo = shortest[v] + arc.transit;
        Int hi = longest[v] + arc.transit;
        if (!set[arc.head]) {
          set[arc.head] = 1;
          shortest[arc.head] = lo;
          longest[arc.head] = hi;
        } else {
          shortest[arc.head] = std::min(shortest[arc.head], lo);
          longest[arc.head] = std::max(longest[arc.head], hi);
        }
      }
    }
    if (2 * longest[net.sink()] <= twoT) return HorizonClass::Long;
    if (2 * shortest[net.sink()] > twoT) return HorizonClass::Short;
    return HorizonClass::Mixed;
  }

  // Cyclic core: decide by safe bounds.
  Int total = 0;
  for (const Arc& a : net.arcs()) {
    if (core[a.tail] && core[a.head]) total += a.transit;
  }
  if (2 * total <= twoT) return HorizonClass::Long;
  if (2 * shortest_transit(net, core) > twoT) return HorizonClass::Short;
  return HorizonClass::Unknown;
}

std::vector<Path> enumerate_st_paths(const Network& net, long long max_paths) {
  std::vector<Path> result;
  std::vector<int> stack;
  std::vector<char> visited(net.node_count(), 0);
  long long found = 0;

  auto dfs = [&](auto&& self, int v) -> void {
    if (v == net.sink()) {
      ++found;
      if (found > max_paths) {
        throw Error(ErrorKind::PathBudgetExceeded,
                    "more than " + std::to_string(max_paths) +
                        " source-sink paths",
                    found);
      }
      result.emplace_back(net, stack);
      return;
    }
    visited[v] = 1;
    for (int a : net.out_arcs(v)) {
      int w = net.arc(a).head;
      if (visited[w]) continue;
      stack.push_back(a);
      self(self, w);
      stack.pop_back();
    }
    visited[v] = 0;
  };
  dfs(dfs, net.source());
  return result;
}

}  // namespace mpctrf
