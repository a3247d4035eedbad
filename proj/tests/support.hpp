// Shared test helpers: compact builders, seeded random instance generators,
// and brute-force reference implementations.

#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "mpctrf/paths.hpp"
#include "mpctrf/reductions.hpp"
#include "mpctrf/trf.hpp"

namespace testsupport {

using namespace mpctrf;

inline long long rnd(std::mt19937& rng, long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

inline std::vector<std::string> node_names(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("n" + std::to_string(i));
  return names;
}

struct NetOptions {
  int min_nodes = 2;
  int max_nodes = 6;
  int extra_arcs = 4;
  long long cap_max = 3;
  long long transit_min = 0;
  long long transit_max = 4;
  long long cost_max = 3;
  bool unit_cost = false;
  bool dag = false;
};

// Random network with node 0 as source, node n-1 as sink, and a guaranteed
// source-sink path along an increasing node sequence (so the dag option only
// has to orient the extra arcs forward).
inline Network random_network(std::mt19937& rng, const NetOptions& opt = {}) {
  int n = static_cast<int>(rnd(rng, opt.min_nodes, opt.max_nodes));
  auto cost = [&] {
    return Int(opt.unit_cost ? 1 : rnd(rng, 0, opt.cost_max));
  };
  auto transit = [&] {
    return Int(rnd(rng, opt.transit_min, opt.transit_max));
  };
  auto cap = [&] { return Int(rnd(rng, 1, opt.cap_max)); };

  std::vector<int> spine{0};
  for (int v = 1; v + 1 < n; ++v) {
    if (rnd(rng, 0, 1)) spine.push_back(v);
  }
  spine.push_back(n - 1);

  std::vector<Arc> arcs;
  for (std::size_t i = 0; i + 1 < spine.size(); ++i) {
    arcs.push_back(Arc{spine[i], spine[i + 1], cap(), transit(), cost()});
  }
  long long extra = rnd(rng, 0, opt.extra_arcs);
  for (long long e = 0; e < extra; ++e) {
    int a = static_cast<int>(rnd(rng, 0, n - 1));
    int b = static_cast<int>(rnd(rng, 0, n - 1));
    if (a == b) continue;
    if (opt.dag && a > b) std::swap(a, b);
    arcs.push_back(Arc{a, b, cap(), transit(), cost()});
  }
  return Network(node_names(n), 0, n - 1, std::move(arcs));
}

// Random series-parallel network between node 0 (source) and node 1 (sink),
// built from a random series/parallel composition tree; at most
// max_leaves + 1 nodes.
inline Network random_sp_network(std::mt19937& rng, int max_leaves,
                                 long long cap_max, long long transit_max,
                                 bool unit_cost = true,
                                 long long cost_max = 3,
                                 long long transit_min = 0) {
  int next_node = 2;
  std::vector<Arc> arcs;
  auto leaf = [&](int s, int t) {
    arcs.push_back(Arc{s, t, Int(rnd(rng, 1, cap_max)),
                       Int(rnd(rng, transit_min, transit_max)),
                       Int(unit_cost ? 1 : rnd(rng, 0, cost_max))});
  };
  auto build = [&](auto&& self, int s, int t, int leaves) -> void {
    if (leaves == 1) {
      leaf(s, t);
      return;
    }
    int split = static_cast<int>(rnd(rng, 1, leaves - 1));
    if (rnd(rng, 0, 1)) {
      int mid = next_node++;
      self(self, s, mid, split);
      self(self, mid, t, leaves - split);
    } else {
      self(self, s, t, split);
      self(self, s, t, leaves - split);
    }
  };
  build(build, 0, 1, static_cast<int>(rnd(rng, 1, max_leaves)));
  return Network(node_names(next_node), 0, 1, std::move(arcs));
}

// Shortest / longest source-sink transit by exhaustive enumeration; returns
// false when the sink is unreachable.
inline bool transit_range(const Network& net, Int& shortest, Int& longest) {
  std::vector<Path> paths = enumerate_st_paths(net, 100000);
  if (paths.empty()) return false;
  shortest = paths[0].transit();
  longest = paths[0].transit();
  for (const Path& p : paths) {
    shortest = std::min(shortest, p.transit());
    longest = std::max(longest, p.transit());
  }
  return true;
}

// Random capacity-feasible T-bounded decomposition: walk the instance's
// simple paths in random order and give each a random rational rate within
// the remaining capacity.
inline TRFlow random_tr_flow(std::mt19937& rng, const Network& net,
                             const Int& horizon) {
  std::vector<Path> paths = enumerate_st_paths(net, 100000);
  std::shuffle(paths.begin(), paths.end(), rng);
  std::vector<Rat> residual;
  for (const Arc& a : net.arcs()) residual.emplace_back(a.capacity);

  std::vector<TRPath> members;
  for (Path& p : paths) {
    if (p.transit() > horizon) continue;
    Rat room = residual[p.arcs().front()];
    for (int a : p.arcs()) room = std::min(room, residual[a]);
    if (room <= 0) continue;
    long long den = rnd(rng, 1, 3);
    Int num_cap = (numerator(room) * den) / denominator(room);
    long long num_max = std::min<long long>(
        static_cast<long long>(num_cap), 6);
    long long num = rnd(rng, 0, num_max);
    if (num == 0) continue;
    Rat rate{Int(num), Int(den)};
    for (int a : p.arcs()) residual[a] -= rate;
    members.push_back(TRPath{std::move(p), std::move(rate)});
  }
  return make_tr_flow(net, horizon, std::move(members));
}

inline bool clause_satisfied(const std::array<int, 3>& clause,
                             unsigned mask) {
  for (int lit : clause) {
    int var = lit > 0 ? lit : -lit;
    bool value = (mask >> (var - 1)) & 1u;
    if ((lit > 0) == value) return true;
  }
  return false;
}

inline bool satisfiable_bruteforce(const Formula3SAT& f) {
  for (unsigned mask = 0; mask < (1u << f.num_variables); ++mask) {
    bool all = true;
    for (const auto& clause : f.clauses) {
      if (!clause_satisfied(clause, mask)) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

inline bool assignment_satisfies(const Formula3SAT& f,
                                 const std::vector<bool>& assignment) {
  unsigned mask = 0;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i]) mask |= 1u << i;
  }
  for (const auto& clause : f.clauses) {
    if (!clause_satisfied(clause, mask)) return false;
  }
  return true;
}

inline bool subset_sum_feasible(const std::vector<long long>& xs,
                                long long target) {
  std::vector<char> can(static_cast<std::size_t>(target) + 1, 0);
  can[0] = 1;
  for (long long x : xs) {
    for (long long s = target; s >= x; --s) {
      if (can[static_cast<std::size_t>(s - x)]) {
        can[static_cast<std::size_t>(s)] = 1;
      }
    }
  }
  return can[static_cast<std::size_t>(target)] != 0;
}

}  // namespace testsupport
