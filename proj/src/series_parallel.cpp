#include "mpctrf/series_parallel.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "mpctrf/errors.hpp"

namespace mpctrf {

SPTree SPTree::leaf(int arc) {
  SPTree t;
  t.kind = Kind::Leaf;
  t.arc = arc;
  return t;
}

SPTree SPTree::compose(Kind kind, std::vector<SPTree> parts) {
  SPTree t;
  t.kind = kind;
  for (SPTree& part : parts) {
    if (part.kind == kind) {
      // Flatten nested nodes of the same kind.
      for (SPTree& child : part.children) t.children.push_back(std::move(child));
    } else {
      t.children.push_back(std::move(part));
    }
  }
  if (kind == Kind::Parallel) {
    std::sort(t.children.begin(), t.children.end(),
              [](const SPTree& a, const SPTree& b) {
                return a.min_leaf() < b.min_leaf();
              });
  }
  return t;
}

int SPTree::min_leaf() const {
  if (kind == Kind::Leaf) return arc;
  int best = -1;
  for (const SPTree& c : children) {
    int m = c.min_leaf();
    if (best < 0 || m < best) best = m;
  }
  return best;
}

std::string SPTree::to_string() const {
  if (kind == Kind::Leaf) return std::to_string(arc);
  std::string out = kind == Kind::Series ? "S(" : "P(";
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (i > 0) out += ",";
    out += children[i].to_string();
  }
  out += ")";
  return out;
}

namespace {

struct KernelArc {
  int tail = -1;
  int head = -1;
  bool alive = true;
  SPTree tree;
  std::vector<int> orig;  // original arc indices forming a tail->head path
};

struct Kernel {
  std::vector<KernelArc> arcs;

  int alive_count() const {
    int n = 0;
    for (const auto& a : arcs)
      if (a.alive) ++n;
    return n;
  }
};

// One pass of parallel merges; true when something changed.
bool reduce_parallel(Kernel& k) {
  bool changed = false;
  for (std::size_t i = 0; i < k.arcs.size(); ++i) {
    if (!k.arcs[i].alive) continue;
    for (std::size_t j = i + 1; j < k.arcs.size(); ++j) {
      if (!k.arcs[j].alive) continue;
      if (k.arcs[i].tail == k.arcs[j].tail &&
          k.arcs[i].head == k.arcs[j].head) {
        std::vector<SPTree> parts;
        parts.push_back(std::move(k.arcs[i].tree));
        parts.push_back(std::move(k.arcs[j].tree));
        k.arcs[i].tree = SPTree::compose(SPTree::Kind::Parallel, std::move(parts));
        k.arcs[j].alive = false;
        changed = true;
      }
    }
  }
  return changed;
}

// One pass of series merges; true when something changed.
bool reduce_series(Kernel& k, int node_count, int source, int sink) {
  bool changed = false;
  for (int v = 0; v < node_count; ++v) {
    if (v == source || v == sink) continue;
    int in_arc = -1, out_arc = -1;
    int in_count = 0, out_count = 0;
    for (std::size_t i = 0; i < k.arcs.size(); ++i) {
      if (!k.arcs[i].alive) continue;
      if (k.arcs[i].head == v) {
        ++in_count;
        in_arc = static_cast<int>(i);
      }
      if (k.arcs[i].tail == v) {
        ++out_count;
        out_arc = static_cast<int>(i);
      }
    }
    if (in_count != 1 || out_count != 1) continue;
    KernelArc& a = k.arcs[in_arc];
    KernelArc& b = k.arcs[out_arc];
    if (a.tail == b.head) continue;  // would create a self-loop
    std::vector<SPTree> parts;
    parts.push_back(std::move(a.tree));
    parts.push_back(std::move(b.tree));
    a.tree = SPTree::compose(SPTree::Kind::Series, std::move(parts));
    a.orig.insert(a.orig.end(), b.orig.begin(), b.orig.end());
    a.head = b.head;
    b.alive = false;
    changed = true;
  }
  return changed;
}

std::vector<char> reach_set(const Network& net, int start, bool forward) {
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

// All simple kernel paths from `from` to `to` whose internal nodes avoid
// `banned`. Paths are lists of kernel arc indices.
void kernel_paths(const Kernel& k, int node_count, int from, int to,
                  const std::vector<char>& banned,
                  std::vector<std::vector<int>>& out) {
  std::vector<int> stack;
  std::vector<char> visited(node_count, 0);
  auto dfs = [&](auto&& self, int v) -> void {
    if (v == to) {
      out.push_back(stack);
      return;
    }
    visited[v] = 1;
    for (std::size_t i = 0; i < k.arcs.size(); ++i) {
      const KernelArc& a = k.arcs[i];
      if (!a.alive || a.tail != v) continue;
      int w = a.head;
      if (w != to && (banned[w] || visited[w])) continue;
      if (visited[w]) continue;
      stack.push_back(static_cast<int>(i));
      self(self, w);
      stack.pop_back();
    }
    visited[v] = 0;
  };
  dfs(dfs, from);
}

// Internal nodes of a kernel path (endpoints excluded).
std::vector<int> internal_nodes(const Kernel& k, const std::vector<int>& path) {
  std::vector<int> nodes;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    nodes.push_back(k.arcs[path[i]].head);
  }
  return nodes;
}

std::vector<int> expand_to_original(const Kernel& k,
                                    const std::vector<int>& path) {
  std::vector<int> arcs;
  for (int i : path) {
    arcs.insert(arcs.end(), k.arcs[i].orig.begin(), k.arcs[i].orig.end());
  }
  return arcs;
}

// Searches the irreducible kernel for the forbidden pattern: four nodes with
// five internally disjoint connecting paths.
std::optional<ForbiddenSubgraph> find_witness(const Kernel& k, int node_count) {
  std::vector<char> in_kernel(node_count, 0);
  for (const auto& a : k.arcs) {
    if (a.alive) {
      in_kernel[a.tail] = 1;
      in_kernel[a.head] = 1;
    }
  }
  std::vector<int> nodes;
  for (int v = 0; v < node_count; ++v)
    if (in_kernel[v]) nodes.push_back(v);

  for (int s0 : nodes)
    for (int v : nodes)
      for (int w : nodes)
        for (int t0 : nodes) {
          if (s0 == v || s0 == w || s0 == t0 || v == w || v == t0 || w == t0)
            continue;
          std::vector<char> banned(node_count, 0);
          banned[s0] = banned[v] = banned[w] = banned[t0] = 1;
          auto paths_between = [&](int from, int to,
                                   const std::vector<char>& used) {
            std::vector<char> avoid = banned;
            for (int u = 0; u < node_count; ++u)
              if (used[u]) avoid[u] = 1;
            std::vector<std::vector<int>> out;
            kernel_paths(k, node_count, from, to, avoid, out);
            return out;
          };
          std::vector<char> used(node_count, 0);
          auto mark = [&](const std::vector<int>& path, char flag) {
            for (int u : internal_nodes(k, path)) used[u] = flag;
          };
          for (const auto& p_sv : paths_between(s0, v, used)) {
            mark(p_sv, 1);
            for (const auto& p_vw : paths_between(v, w, used)) {
              mark(p_vw, 1);
              for (const auto& p_wt : paths_between(w, t0, used)) {
                mark(p_wt, 1);
                for (const auto& p_sw : paths_between(s0, w, used)) {
                  mark(p_sw, 1);
                  auto p_vts = paths_between(v, t0, used);
                  if (!p_vts.empty()) {
                    ForbiddenSubgraph fs;
                    fs.s0 = s0;
                    fs.v = v;
                    fs.w = w;
                    fs.t0 = t0;
                    fs.path_sv = expand_to_original(k, p_sv);
                    fs.path_vw = expand_to_original(k, p_vw);
                    fs.path_wt = expand_to_original(k, p_wt);
                    fs.path_sw = expand_to_original(k, p_sw);
                    fs.path_vt = expand_to_original(k, p_vts.front());
                    return fs;
                  }
                  mark(p_sw, 0);
                }
                mark(p_wt, 0);
              }
              mark(p_vw, 0);
            }
            mark(p_sv, 0);
          }
        }
  return std::nullopt;
}

}  // namespace

SPResult is_series_parallel(const Network& net) {
  SPResult result;

  auto from_s = reach_set(net, net.source(), true);
  auto to_t = reach_set(net, net.sink(), false);
  for (int v = 0; v < net.node_count(); ++v) {
    if (!from_s[v] || !to_t[v]) {
      result.series_parallel = false;
      result.reason = "not two-terminal: node '" + net.node_name(v) +
                      "' lies on no source-sink path";
      return result;
    }
  }
  if (!net.core_acyclic()) {
    result.series_parallel = false;
    result.reason = "not two-terminal: contains a directed cycle";
    return result;
  }
  if (net.arc_count() == 0) {
    result.series_parallel = false;
    result.reason = "not two-terminal: no arcs";
    return result;
  }

  Kernel kernel;
  for (int a = 0; a < net.arc_count(); ++a) {
    KernelArc ka;
    ka.tail = net.arc(a).tail;
    ka.head = net.arc(a).head;
    ka.tree = SPTree::leaf(a);
    ka.orig = {a};
    kernel.arcs.push_back(std::move(ka));
  }

  for (;;) {
    bool changed = reduce_parallel(kernel);
    changed = reduce_series(kernel, net.node_count(), net.source(), net.sink()) ||
              changed;
    if (!changed) break;
  }

  if (kernel.alive_count() == 1) {
    for (auto& ka : kernel.arcs) {
      if (!ka.alive) continue;
      if (ka.tail == net.source() && ka.head == net.sink()) {
        result.series_parallel = true;
        result.tree = std::move(ka.tree);
        return result;
      }
    }
  }

  result.series_parallel = false;
  auto witness = find_witness(kernel, net.node_count());
  if (witness) {
    if (!validate_forbidden_subgraph(net, *witness)) {
      fail(ErrorKind::Internal, "extracted forbidden subgraph fails validation");
    }
    result.witness = std::move(witness);
    result.reason = "irreducible kernel embeds the forbidden pattern";
  } else {
    result.reason = "irreducible under series/parallel reduction";
  }
  return result;
}

bool validate_forbidden_subgraph(const Network& net,
                                 const ForbiddenSubgraph& w) {
  std::set<int> terminals{w.s0, w.v, w.w, w.t0};
  if (terminals.size() != 4) return false;
  for (int v : terminals) {
    if (v < 0 || v >= net.node_count()) return false;
  }

  struct Leg {
    const std::vector<int>* arcs;
    int from, to;
  };
  const Leg legs[] = {{&w.path_sv, w.s0, w.v},
                      {&w.path_vw, w.v, w.w},
                      {&w.path_wt, w.w, w.t0},
                      {&w.path_sw, w.s0, w.w},
                      {&w.path_vt, w.v, w.t0}};

  std::set<int> seen_internal;
  std::set<int> seen_arcs;
  for (const Leg& leg : legs) {
    if (leg.arcs->empty()) return false;
    int at = leg.from;
    std::set<int> leg_internal;
    for (std::size_t i = 0; i < leg.arcs->size(); ++i) {
      int a = (*leg.arcs)[i];
      if (a < 0 || a >= net.arc_count()) return false;
      if (net.arc(a).tail != at) return false;
      if (!seen_arcs.insert(a).second) return false;
      at = net.arc(a).head;
      if (i + 1 < leg.arcs->size()) {
        if (terminals.count(at)) return false;
        if (!leg_internal.insert(at).second) return false;  // leg not simple
        if (seen_internal.count(at)) return false;
      }
    }
    if (at != leg.to) return false;
    seen_internal.insert(leg_internal.begin(), leg_internal.end());
  }
  return true;
}

}  // namespace mpctrf
