#include <doctest.h>

#include <algorithm>
#include <array>
#include <random>
#include <vector>

#include "mpctrf/errors.hpp"
#include "mpctrf/paths.hpp"
#include "mpctrf/reductions.hpp"
#include "mpctrf/solvers.hpp"
#include "support.hpp"

using namespace mpctrf;
using namespace testsupport;

TEST_CASE("the circulation value is the integral and fractional maximum") {
  std::mt19937 rng(20240301);
  int tested = 0;
  while (tested < 120) {
    NetOptions opt;
    opt.max_nodes = 5;
    opt.extra_arcs = 3;
    opt.cap_max = 2;
    opt.transit_max = 3;
    Network net = random_network(rng, opt);
    Instance inst{net, Int(rnd(rng, 2, 8)), Rat(0)};
    Rat vmax;
    try {
      vmax = max_trf_value(inst);
    } catch (const Error& e) {
      REQUIRE(e.kind() == ErrorKind::NoPath);
      continue;
    }
    ++tested;
    REQUIRE(is_integral(vmax));

    inst.demand = vmax;
    Solution at_max = oracle_integral(inst);
    CHECK(at_max.value == vmax);

    inst.demand = vmax + 1;
    try {
      oracle_integral(inst);
      FAIL("demand above the maximum must be infeasible");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Infeasible);
    }
  }
}

TEST_CASE("the long-horizon solver matches both oracles at full demand") {
  std::mt19937 rng(20240302);
  int tested = 0;
  while (tested < 30) {
    NetOptions opt;
    opt.max_nodes = 5;
    opt.extra_arcs = 3;
    opt.cap_max = 2;
    opt.transit_min = 1;
    opt.transit_max = 3;
    opt.dag = true;
    Network net = random_network(rng, opt);
    Int shortest, longest;
    if (!transit_range(net, shortest, longest)) continue;
    Instance inst{net, 2 * longest, Rat(0)};
    inst.demand = max_trf_value(inst);
    if (inst.demand == 0) continue;
    ++tested;

    Solution fast = solve_long_horizon(inst);
    Solution integral = oracle_integral(inst);
    Solution fractional = oracle_fractional(inst);
    CHECK(fast.peak == integral.peak);
    CHECK(fast.peak == fractional.peak);
    CHECK(fast.value == inst.demand);
  }
}

TEST_CASE("greedy stays integral at full demand and optimal on its class") {
  std::mt19937 rng(20240303);
  int tested = 0;
  while (tested < 40) {
    Network net = random_sp_network(rng, 5, 3, 4);
    Instance inst{net, Int(rnd(rng, 2, 9)), Rat(0)};
    Rat vmax;
    try {
      vmax = max_trf_value(inst);
    } catch (const Error& e) {
      REQUIRE(e.kind() == ErrorKind::NoPath);
      continue;
    }
    if (vmax == 0) continue;
    inst.demand = vmax;
    ++tested;

    Solution greedy = solve_mssp(inst);
    CHECK(greedy.value == vmax);
    for (const TRPath& p : greedy.flow.paths) {
      CHECK(is_integral(p.rate));
    }
    Solution colgen = solve_colgen(inst, ColGenMode::UnitCostAcyclic);
    CHECK(greedy.peak == colgen.peak);
  }
}

TEST_CASE("converged duals price every bounded path nonnegatively") {
  std::mt19937 rng(20240304);
  int tested = 0;
  while (tested < 30) {
    NetOptions opt;
    opt.max_nodes = 5;
    opt.extra_arcs = 3;
    opt.cap_max = 2;
    opt.transit_max = 3;
    opt.unit_cost = true;
    opt.dag = true;
    Network net = random_network(rng, opt);
    Instance inst{net, Int(rnd(rng, 2, 8)), Rat(0)};
    Rat vmax;
    try {
      vmax = max_trf_value(inst);
    } catch (const Error& e) {
      REQUIRE(e.kind() == ErrorKind::NoPath);
      continue;
    }
    if (vmax == 0) continue;
    long long quarter = rnd(rng, 1, 4);
    inst.demand = vmax * Rat(Int(quarter), Int(4));
    ++tested;

    Solution sol = solve_colgen(inst, ColGenMode::UnitCostAcyclic);
    const auto& duals = sol.certificate_detail.at("final_duals");
    std::vector<Rat> pi;
    for (const auto& s : duals.at("pi")) {
      pi.push_back(parse_rational(s.get<std::string>()));
    }
    Rat z = parse_rational(duals.at("z").get<std::string>());
    REQUIRE(static_cast<int>(pi.size()) == net.arc_count());

    for (const Path& p : enumerate_st_paths(net, 100000)) {
      if (p.transit() > inst.horizon) continue;
      Rat rc(path_weight(p, inst.horizon));
      for (int a : p.arcs()) rc += pi[a];
      rc -= Rat(inst.horizon - p.transit()) * z;
      CHECK(rc >= 0);
    }
    for (const TRPath& member : sol.flow.paths) {
      Rat rc(path_weight(member.path, inst.horizon));
      for (int a : member.path.arcs()) rc += pi[a];
      rc -= Rat(inst.horizon - member.path.transit()) * z;
      CHECK(rc == 0);
    }
  }
}

TEST_CASE("the optimal peak is monotone in the demand") {
  std::mt19937 rng(20240305);
  int tested = 0;
  while (tested < 20) {
    NetOptions opt;
    opt.max_nodes = 5;
    opt.extra_arcs = 3;
    opt.cap_max = 2;
    opt.transit_max = 3;
    opt.unit_cost = true;
    opt.dag = true;
    Network net = random_network(rng, opt);
    Instance inst{net, Int(rnd(rng, 2, 8)), Rat(0)};
    Rat vmax;
    try {
      vmax = max_trf_value(inst);
    } catch (const Error& e) {
      REQUIRE(e.kind() == ErrorKind::NoPath);
      continue;
    }
    if (vmax == 0) continue;
    ++tested;

    Rat previous(-1);
    for (long long j = 1; j <= 4; ++j) {
      inst.demand = vmax * Rat(Int(j), Int(4));
      Solution sol = solve_colgen(inst, ColGenMode::UnitCostAcyclic);
      CHECK(sol.peak >= previous);
      previous = sol.peak;
    }
  }
}

TEST_CASE("sampled formulas satisfy the peak-threshold equivalence") {
  std::mt19937 rng(20240306);
  for (int iter = 0; iter < 60; ++iter) {
    Formula3SAT f;
    f.num_variables = static_cast<int>(rnd(rng, 3, 4));
    long long m = rnd(rng, 1, 4);
    for (long long c = 0; c < m; ++c) {
      std::vector<int> vars(f.num_variables);
      for (int i = 0; i < f.num_variables; ++i) vars[i] = i + 1;
      std::shuffle(vars.begin(), vars.end(), rng);
      std::array<int, 3> clause{};
      for (int i = 0; i < 3; ++i) {
        clause[i] = rnd(rng, 0, 1) ? vars[i] : -vars[i];
      }
      f.clauses.push_back(clause);
    }

    GenResult gen = gen_3sat(f);
    Solution sol = oracle_integral(gen.instance);
    SatDecode decoded = decode_3sat(sol, gen.mapping);
    bool expected = satisfiable_bruteforce(f);
    CHECK(decoded.satisfiable == expected);
    if (expected) {
      CHECK(assignment_satisfies(f, decoded.assignment));
    } else {
      CHECK(sol.peak == 3);
    }
  }
}

TEST_CASE("sampled subset instances mirror exact reachability") {
  std::mt19937 rng(20240307);
  for (int iter = 0; iter < 30; ++iter) {
    long long n = rnd(rng, 1, 6);
    std::vector<long long> raw;
    std::vector<Int> xs;
    long long total = 0;
    for (long long i = 0; i < n; ++i) {
      long long x = rnd(rng, 1, 8);
      raw.push_back(x);
      xs.push_back(Int(x));
      total += x;
    }
    long long target = rnd(rng, 1, total);
    GenResult gen = gen_subsetsum(xs, Int(target));
    Solution sol = oracle_integral(gen.instance);
    CHECK(sol.peak == sol.value);
    CHECK((sol.value == target) == subset_sum_feasible(raw, target));
  }
}

namespace {

struct CspReference {
  bool found = false;
  Int best_cost;
};

// Cheapest simple source-sink path within the length bound, by brute force.
CspReference csp_bruteforce(const CspInput& csp) {
  CspReference ref;
  int n = static_cast<int>(csp.nodes.size());
  std::vector<char> used(n, 0);
  auto walk = [&](auto&& self, int v, Int cost, Int length) -> void {
    if (length > csp.length_bound) return;
    if (v == csp.sink) {
      if (!ref.found || cost < ref.best_cost) {
        ref.found = true;
        ref.best_cost = cost;
      }
      return;
    }
    used[v] = 1;
    for (const CspArc& a : csp.arcs) {
      if (a.tail != v || used[a.head]) continue;
      self(self, a.head, cost + a.cost, length + a.length);
    }
    used[v] = 0;
  };
  walk(walk, csp.source, Int(0), Int(0));
  return ref;
}

}  // namespace

TEST_CASE("sampled length-bounded path instances decode to the brute force") {
  std::mt19937 rng(20240308);
  int tested = 0;
  while (tested < 20) {
    int n = static_cast<int>(rnd(rng, 3, 5));
    CspInput csp;
    csp.nodes = node_names(n);
    csp.source = 0;
    csp.sink = n - 1;
    for (int v = 0; v + 1 < n; ++v) {
      csp.arcs.push_back(
          CspArc{v, v + 1, Int(rnd(rng, 0, 5)), Int(rnd(rng, 1, 4))});
    }
    long long extra = rnd(rng, 0, 3);
    for (long long e = 0; e < extra; ++e) {
      int a = static_cast<int>(rnd(rng, 0, n - 1));
      int b = static_cast<int>(rnd(rng, 0, n - 1));
      if (a == b) continue;
      csp.arcs.push_back(
          CspArc{a, b, Int(rnd(rng, 0, 5)), Int(rnd(rng, 1, 4))});
    }
    csp.length_bound = rnd(rng, 1, 4 * n);
    CspReference ref = csp_bruteforce(csp);
    ++tested;

    GenResult gen = gen_csp(csp);
    Int scale(gen.mapping.at("peak_scale").get<long long>());
    if (!ref.found) {
      try {
        oracle_integral(gen.instance);
        FAIL("no path fits the bound, the instance must be infeasible");
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Infeasible);
      }
      continue;
    }
    Solution sol = oracle_integral(gen.instance);
    CHECK(sol.peak == Rat(ref.best_cost * scale));
  }
}

TEST_CASE("short horizons force peak equal to value on unit costs") {
  std::mt19937 rng(20240309);
  int tested = 0;
  while (tested < 100) {
    NetOptions opt;
    opt.max_nodes = 5;
    opt.extra_arcs = 3;
    opt.cap_max = 2;
    opt.transit_min = 1;
    opt.transit_max = 4;
    opt.unit_cost = true;
    Network net = random_network(rng, opt);
    Int shortest, longest;
    if (!transit_range(net, shortest, longest)) continue;
    Int horizon = 2 * shortest - 1;
    if (horizon < 1) continue;
    Instance inst{net, horizon, Rat(0)};
    if (classify_horizon(inst) != HorizonClass::Short) continue;
    ++tested;

    TRFlow f = random_tr_flow(rng, net, horizon);
    CHECK(peak_cost(f) == trf_value(f));
  }
}
