#include "mpctrf/static_flow.hpp"

#include <algorithm>

#include "mpctrf/errors.hpp"

namespace mpctrf {

Rat flow_value(const Network& net, const StaticFlow& f) {
  Rat value = 0;
  for (int a : net.out_arcs(net.source())) value += f.x[a];
  for (int a : net.in_arcs(net.source())) value -= f.x[a];
  return value;
}

namespace {

Rat excess(const Network& net, const StaticFlow& f, int v) {
  Rat e = 0;
  for (int a : net.in_arcs(v)) e += f.x[a];
  for (int a : net.out_arcs(v)) e -= f.x[a];
  return e;
}

}  // namespace

bool is_feasible_flow(const Network& net, const StaticFlow& f) {
  if (static_cast<int>(f.x.size()) != net.arc_count()) return false;
  for (int a = 0; a < net.arc_count(); ++a) {
    if (f.x[a] < 0 || f.x[a] > Rat(net.arc(a).capacity)) return false;
  }
  for (int v = 0; v < net.node_count(); ++v) {
    if (v == net.source() || v == net.sink()) continue;
    if (excess(net, f, v) != 0) return false;
  }
  return true;
}

bool is_circulation(const Network& net, const StaticFlow& f) {
  if (static_cast<int>(f.x.size()) != net.arc_count()) return false;
  for (int v = 0; v < net.node_count(); ++v) {
    if (excess(net, f, v) != 0) return false;
  }
  return true;
}

Rat flow_cost(const std::vector<Int>& cost, const StaticFlow& f) {
  Rat total = 0;
  for (std::size_t a = 0; a < f.x.size(); ++a) total += Rat(cost[a]) * f.x[a];
  return total;
}

ExtendedNetwork extend_with_return_arc(const Network& net,
                                       std::vector<Int> arc_costs,
                                       const Int& return_cost) {
  if (static_cast<int>(arc_costs.size()) != net.arc_count()) {
    fail(ErrorKind::Internal, "arc cost vector size mismatch");
  }
  std::vector<Arc> arcs = net.arcs();
  Arc ret;
  ret.tail = net.sink();
  ret.head = net.source();
  ret.capacity = net.source_out_capacity();
  ret.transit = 0;
  ret.cost = 0;
  arcs.push_back(ret);
  arc_costs.push_back(return_cost);
  Network extended(net.node_names(), net.source(), net.sink(), std::move(arcs));
  return ExtendedNetwork{std::move(extended), net.arc_count(),
                         std::move(arc_costs)};
}

namespace {

struct ResidualStep {
  int arc = -1;
  bool forward = true;
};

// One Bellman-Ford sweep hunting for a residual negative cycle. Arcs are
// scanned in a fixed order (by index, forward direction before backward), so
// the cycle found is a deterministic function of the current flow.
bool find_negative_cycle(const Network& net, const std::vector<Int>& cost,
                         const StaticFlow& f, std::vector<ResidualStep>* cycle) {
  const int n = net.node_count();
  const int m = net.arc_count();
  std::vector<Rat> dist(n, Rat(0));
  std::vector<int> parent_node(n, -1);
  std::vector<ResidualStep> parent_step(n);

  int last_updated = -1;
  for (int pass = 0; pass < n; ++pass) {
    last_updated = -1;
    for (int a = 0; a < m; ++a) {
      const Arc& arc = net.arc(a);
      if (f.x[a] < Rat(arc.capacity)) {
        Rat cand = dist[arc.tail] + Rat(cost[a]);
        if (cand < dist[arc.head]) {
          dist[arc.head] = cand;
          parent_node[arc.head] = arc.tail;
          parent_step[arc.head] = {a, true};
          last_updated = arc.head;
        }
      }
      if (f.x[a] > 0) {
        Rat cand = dist[arc.head] - Rat(cost[a]);
        if (cand < dist[arc.tail]) {
          dist[arc.tail] = cand;
          parent_node[arc.tail] = arc.head;
          parent_step[arc.tail] = {a, false};
          last_updated = arc.tail;
        }
      }
    }
    if (last_updated < 0) return false;
  }

  // An update on the n-th pass means a negative cycle; walk n parent links
  // to land on it, then collect it.
  int v = last_updated;
  for (int i = 0; i < n; ++i) v = parent_node[v];
  std::vector<ResidualStep> steps;
  int u = v;
  do {
    steps.push_back(parent_step[u]);
    u = parent_node[u];
  } while (u != v);
  std::reverse(steps.begin(), steps.end());
  *cycle = std::move(steps);
  return true;
}

}  // namespace

CirculationResult min_cost_circulation(const Network& net,
                                       const std::vector<Int>& cost) {
  if (static_cast<int>(cost.size()) != net.arc_count()) {
    fail(ErrorKind::Internal, "circulation cost vector size mismatch");
  }
  CirculationResult result;
  result.flow = StaticFlow(net.arc_count());

  std::vector<ResidualStep> cycle;
  while (find_negative_cycle(net, cost, result.flow, &cycle)) {
    Rat bottleneck;
    bool first = true;
    for (const ResidualStep& step : cycle) {
      Rat room = step.forward
                     ? Rat(net.arc(step.arc).capacity) - result.flow.x[step.arc]
                     : result.flow.x[step.arc];
      if (first || room < bottleneck) bottleneck = room;
      first = false;
    }
    if (bottleneck <= 0) {
      fail(ErrorKind::Internal, "degenerate residual cycle");
    }
    for (const ResidualStep& step : cycle) {
      if (step.forward) {
        result.flow.x[step.arc] += bottleneck;
      } else {
        result.flow.x[step.arc] -= bottleneck;
      }
    }
    ++result.cycles_cancelled;
  }
  result.certified = true;
  result.cost = to_int(flow_cost(cost, result.flow));
  return result;
}

namespace {

// Lexicographically smallest simple source-sink path whose arcs all carry
// positive flow; empty when none exists.
std::vector<int> lex_support_path(const Network& net, const StaticFlow& f) {
  std::vector<int> stack;
  std::vector<char> visited(net.node_count(), 0);
  std::vector<int> found;
  auto dfs = [&](auto&& self, int v) -> bool {
    if (v == net.sink()) {
      found = stack;
      return true;
    }
    visited[v] = 1;
    for (int a : net.out_arcs(v)) {
      if (f.x[a] <= 0) continue;
      int w = net.arc(a).head;
      if (visited[w]) continue;
      stack.push_back(a);
      if (self(self, w)) return true;
      stack.pop_back();
    }
    visited[v] = 0;
    return false;
  };
  dfs(dfs, net.source());
  return found;
}

// Some cycle in the positive support, starting from the smallest-index
// support arc and always following the smallest-index support arc onward.
std::vector<int> support_cycle(const Network& net, const StaticFlow& f) {
  int start = -1;
  for (int a = 0; a < net.arc_count(); ++a) {
    if (f.x[a] > 0) {
      start = a;
      break;
    }
  }
  if (start < 0) return {};
  std::vector<int> walk{start};
  std::vector<int> seen_at(net.node_count(), -1);
  seen_at[net.arc(start).tail] = 0;
  int v = net.arc(start).head;
  while (seen_at[v] < 0) {
    seen_at[v] = static_cast<int>(walk.size());
    int next = -1;
    for (int a : net.out_arcs(v)) {
      if (f.x[a] > 0) {
        next = a;
        break;
      }
    }
    if (next < 0) {
      fail(ErrorKind::Internal, "support walk stuck; flow not conserved");
    }
    walk.push_back(next);
    v = net.arc(next).head;
  }
  return std::vector<int>(walk.begin() + seen_at[v], walk.end());
}

}  // namespace

std::vector<FlowMember> decompose(const Network& net, const StaticFlow& f) {
  if (static_cast<int>(f.x.size()) != net.arc_count()) {
    fail(ErrorKind::Validation, "flow vector size mismatch");
  }
  for (int a = 0; a < net.arc_count(); ++a) {
    if (f.x[a] < 0 || f.x[a] > Rat(net.arc(a).capacity)) {
      fail(ErrorKind::Validation, "flow violates capacity bounds");
    }
  }
  StaticFlow rest = f;
  std::vector<FlowMember> members;

  while (flow_value(net, rest) > 0) {
    std::vector<int> arcs = lex_support_path(net, rest);
    if (arcs.empty()) {
      fail(ErrorKind::Internal, "positive value but no support path");
    }
    Rat bottleneck = rest.x[arcs.front()];
    for (int a : arcs) bottleneck = std::min(bottleneck, rest.x[a]);
    for (int a : arcs) rest.x[a] -= bottleneck;
    members.push_back(FlowMember{Path(net, arcs), bottleneck});
  }

  for (;;) {
    std::vector<int> arcs = support_cycle(net, rest);
    if (arcs.empty()) break;
    Rat bottleneck = rest.x[arcs.front()];
    for (int a : arcs) bottleneck = std::min(bottleneck, rest.x[a]);
    for (int a : arcs) rest.x[a] -= bottleneck;
    members.push_back(FlowMember{Path(net, arcs), bottleneck});
  }
  return members;
}

StaticFlow flow_of_members(const Network& net,
                           const std::vector<FlowMember>& members) {
  StaticFlow f(net.arc_count());
  for (const FlowMember& m : members) {
    for (int a : m.path.arcs()) f.x[a] += m.rate;
  }
  return f;
}

std::vector<FlowMember> t_bounded_decomposition(
    const Network& net, const StaticFlow& f, const Int& horizon,
    const std::vector<Int>& cycle_cost) {
  std::vector<FlowMember> members = decompose(net, f);
  std::vector<FlowMember> paths;
  for (FlowMember& m : members) {
    if (m.path.is_cycle()) {
      Rat cost = 0;
      for (int a : m.path.arcs()) cost += Rat(cycle_cost[a]);
      if (cost != 0) {
        fail(ErrorKind::NotTBounded,
             "support contains a cycle of nonzero cost " + rat_to_string(cost));
      }
      continue;
    }
    if (!m.path.is_source_sink(net)) {
      fail(ErrorKind::Internal, "decomposition produced a stray path");
    }
    if (m.path.transit() > horizon) {
      fail(ErrorKind::NotTBounded,
           "flow path transit " + int_to_string(m.path.transit()) +
               " exceeds horizon " + int_to_string(horizon));
    }
    paths.push_back(std::move(m));
  }
  return paths;
}

}  // namespace mpctrf
