#include <doctest.h>

#include <functional>
#include <string>
#include <vector>

#include "mpctrf/errors.hpp"
#include "mpctrf/reductions.hpp"
#include "mpctrf/solvers.hpp"

using namespace mpctrf;

namespace {

std::vector<std::vector<int>> member_arcs(const Solution& sol) {
  std::vector<std::vector<int>> out;
  for (const TRPath& p : sol.flow.paths) out.push_back(p.path.arcs());
  return out;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::Internal;
}

Instance parallel_pair() {
  // Two parallel unit arcs with transits 1 and 2, horizon 10, demand 12.
  Network net({"s", "t"}, 0, 1,
              {Arc{0, 1, 1, 1, 1}, Arc{0, 1, 1, 2, 1}});
  return Instance{std::move(net), Int(10), Rat(12)};
}

}  // namespace

TEST_CASE("solver and certificate names are stable") {
  CHECK(std::string(solver_tag_name(SolverTag::FoFu)) == "fofu");
  CHECK(std::string(solver_tag_name(SolverTag::Mssp)) == "mssp");
  CHECK(std::string(solver_tag_name(SolverTag::LongHorizon)) ==
        "long-horizon");
  CHECK(std::string(solver_tag_name(SolverTag::ColGenLong)) == "colgen-long");
  CHECK(std::string(solver_tag_name(SolverTag::ColGenUnit)) == "colgen-unit");
  CHECK(std::string(solver_tag_name(SolverTag::OracleInt)) == "oracle-int");
  CHECK(std::string(solver_tag_name(SolverTag::OracleFrac)) == "oracle-frac");
  CHECK(std::string(certificate_kind_name(
            CertificateKind::CirculationOptimal)) == "CirculationOptimal");
}

TEST_CASE("max TR flow routes the value/peak family through its fast path") {
  Instance inst = figure_instance("fig2", 3).instance;
  REQUIRE(inst.horizon == 8);
  Solution sol = solve_max_trf(inst);
  CHECK(sol.value == 4);
  CHECK(sol.peak == 3);
  CHECK(sol.argmax == 4);
  CHECK(member_arcs(sol) == std::vector<std::vector<int>>{{0, 1}});
  CHECK(sol.flow.paths[0].rate == 1);
  CHECK(sol.certificate == CertificateKind::CirculationOptimal);
  CHECK(sol.certificate_detail.at("circulation_cost") == "-4");
}

TEST_CASE("max TR flow saturates the two-decomposition network") {
  Instance inst = figure_instance("fig1", 1).instance;
  Solution sol = solve_max_trf(inst);
  CHECK(sol.value == 6);
  CHECK(sol.peak == 4);
  CHECK(sol.argmax == 3);
  CHECK(member_arcs(sol) ==
        std::vector<std::vector<int>>{{0, 2, 3, 5}, {1, 4}});
}

TEST_CASE("maximum value ignores the instance demand") {
  Instance inst = figure_instance("fig1", 1).instance;
  inst.demand = 99;
  CHECK(max_trf_value(inst) == 6);
  CHECK(kind_of([&] { solve_max_trf(inst); }) == ErrorKind::DemandExceedsMax);
}

TEST_CASE("max TR flow rejects an unreachable sink") {
  Network net({"s", "t", "u"}, 0, 1, {Arc{2, 1, 1, 1, 1}});
  Instance inst{std::move(net), Int(4), Rat(0)};
  CHECK(kind_of([&] { solve_max_trf(inst); }) == ErrorKind::NoPath);
}

TEST_CASE("long-horizon solver prefers the cheap-occupancy maximum flow") {
  Instance inst = figure_instance("fig2", 3, Int(10)).instance;
  REQUIRE(inst.demand == 6);
  Solution sol = solve_long_horizon(inst);
  CHECK(sol.solver == SolverTag::LongHorizon);
  CHECK(sol.value == 6);
  CHECK(sol.peak == 3);
  CHECK(member_arcs(sol) == std::vector<std::vector<int>>{{0, 1}});
  CHECK(sol.certificate_detail.at("big_m") == "4");
}

TEST_CASE("long-horizon solver delegates below the maximum value") {
  Instance inst = figure_instance("fig2", 3, Int(10)).instance;
  inst.demand = 5;
  Solution sol = solve_long_horizon(inst);
  CHECK(sol.solver == SolverTag::ColGenLong);
  CHECK(sol.value == 5);
  CHECK(sol.peak == 0);
  CHECK(member_arcs(sol) == std::vector<std::vector<int>>{{0, 2, 3}});
  CHECK(sol.flow.paths[0].rate == 1);
}

TEST_CASE("long-horizon solver checks its preconditions") {
  Instance mixed = figure_instance("fig2", 3).instance;
  CHECK(kind_of([&] { solve_long_horizon(mixed); }) ==
        ErrorKind::HorizonNotLong);
  Instance inst = figure_instance("fig2", 3, Int(10)).instance;
  inst.demand = 7;
  CHECK(kind_of([&] { solve_long_horizon(inst); }) ==
        ErrorKind::DemandExceedsMax);
}

TEST_CASE("greedy sends shortest-transit paths first") {
  Instance inst = figure_instance("fig1", 1).instance;
  Solution sol = solve_mssp(inst);
  CHECK(sol.value == 6);
  CHECK(sol.peak == 4);
  CHECK(sol.argmax == 3);
  CHECK(member_arcs(sol) ==
        std::vector<std::vector<int>>{{1, 4}, {0, 2, 3, 5}});
  CHECK(sol.certificate == CertificateKind::GreedyExhausted);
  CHECK(sol.certificate_detail.at("iterations") == 2);
}

TEST_CASE("greedy tops up the last path fractionally") {
  Solution sol = solve_mssp(parallel_pair());
  CHECK(sol.value == 12);
  CHECK(sol.peak == Rat(7, 4));
  CHECK(sol.argmax == 5);
  REQUIRE(member_arcs(sol) == std::vector<std::vector<int>>{{0}, {1}});
  CHECK(sol.flow.paths[0].rate == 1);
  CHECK(sol.flow.paths[1].rate == Rat(3, 8));

  Instance partial = figure_instance("fig1", 1).instance;
  partial.demand = 5;
  Solution half = solve_mssp(partial);
  CHECK(half.value == 5);
  CHECK(half.peak == 3);
  CHECK(half.flow.paths[1].rate == Rat(1, 2));
}

TEST_CASE("greedy solves zero demand with an empty decomposition") {
  Instance inst = figure_instance("fig1", 1).instance;
  inst.demand = 0;
  Solution sol = solve_mssp(inst);
  CHECK(sol.value == 0);
  CHECK(sol.peak == 0);
  CHECK(sol.flow.paths.empty());
}

TEST_CASE("greedy refuses instances outside its class") {
  Instance costly = figure_instance("fig2", 3).instance;
  CHECK(kind_of([&] { solve_mssp(costly); }) == ErrorKind::NotUnitCost);
  Instance nonsp = figure_instance("greedy", 3).instance;
  CHECK(kind_of([&] { solve_mssp(nonsp); }) == ErrorKind::NotSeriesParallel);
  Instance heavy = figure_instance("fig1", 1).instance;
  heavy.demand = 7;
  CHECK(kind_of([&] { solve_mssp(heavy); }) == ErrorKind::Infeasible);
}

TEST_CASE("column generation matches the greedy optimum on unit costs") {
  Solution sol = solve_colgen(parallel_pair(), ColGenMode::UnitCostAcyclic);
  CHECK(sol.solver == SolverTag::ColGenUnit);
  CHECK(sol.value >= 12);
  CHECK(sol.peak == Rat(7, 4));
  CHECK(sol.certificate == CertificateKind::ColGenConverged);
  CHECK(sol.certificate_detail.at("min_reduced_cost").get<std::string>() !=
        "");
}

TEST_CASE("column generation reaches the zero-peak column") {
  Instance inst = figure_instance("fig2", 3, Int(10)).instance;
  inst.demand = 5;
  Solution sol = solve_colgen(inst, ColGenMode::LongHorizon);
  CHECK(sol.value == 5);
  CHECK(sol.peak == 0);
  CHECK(member_arcs(sol) == std::vector<std::vector<int>>{{0, 2, 3}});
}

TEST_CASE("column generation on the greedy family at full demand") {
  Instance inst = figure_instance("greedy", 3).instance;
  REQUIRE(inst.demand == 8);
  Solution sol = solve_colgen(inst, ColGenMode::UnitCostAcyclic);
  CHECK(sol.value == 8);
  CHECK(sol.peak == 8);
}

TEST_CASE("column generation handles trivial and impossible demands") {
  Instance zero = parallel_pair();
  zero.demand = 0;
  Solution sol = solve_colgen(zero, ColGenMode::UnitCostAcyclic);
  CHECK(sol.value == 0);
  CHECK(sol.peak == 0);
  CHECK(sol.certificate_detail.at("columns") == 0);

  Instance heavy = parallel_pair();
  heavy.demand = 99;
  CHECK(kind_of([&] {
          solve_colgen(heavy, ColGenMode::UnitCostAcyclic);
        }) == ErrorKind::Infeasible);
}

TEST_CASE("column generation refuses mismatched modes") {
  Instance gap = figure_instance("fig3", 3).instance;
  CHECK(kind_of([&] { solve_colgen(gap, ColGenMode::LongHorizon); }) ==
        ErrorKind::HorizonNotLong);
  CHECK(kind_of([&] { solve_colgen(gap, ColGenMode::UnitCostAcyclic); }) ==
        ErrorKind::NotUnitCost);
}

TEST_CASE("column generation respects its column budget") {
  Instance inst = figure_instance("fig2", 3, Int(10)).instance;
  inst.demand = 5;
  try {
    solve_colgen(inst, ColGenMode::LongHorizon, 1);
    FAIL("expected PathBudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PathBudgetExceeded);
    CHECK(e.count() == 1);
  }
}

TEST_CASE("integral oracle reproduces the two-decomposition optimum") {
  Instance inst = figure_instance("fig1", 1).instance;
  Solution sol = oracle_integral(inst);
  CHECK(sol.solver == SolverTag::OracleInt);
  CHECK(sol.value == 6);
  CHECK(sol.peak == 4);
  CHECK(sol.argmax == 3);
  CHECK(member_arcs(sol) ==
        std::vector<std::vector<int>>{{0, 2, 3, 5}, {1, 4}});
  CHECK(sol.certificate == CertificateKind::OracleExhaustive);
  CHECK(sol.certificate_detail.at("paths") == 4);
}

TEST_CASE("integral oracle pays full peak on the integrality-gap family") {
  Instance inst = figure_instance("fig3", 3).instance;
  Solution sol = oracle_integral(inst);
  CHECK(sol.value == 1);
  CHECK(sol.peak == 1);
  REQUIRE(sol.flow.paths.size() == 1);
  CHECK(sol.flow.paths[0].rate == 1);
}

TEST_CASE("integral oracle solves exact subset selection") {
  GenResult gen = gen_subsetsum({Int(1), Int(2), Int(3)}, Int(4));
  Solution sol = oracle_integral(gen.instance);
  CHECK(sol.value == 4);
  CHECK(sol.peak == 4);
  CHECK(member_arcs(sol) == std::vector<std::vector<int>>{{0}, {2}});
}

TEST_CASE("integral oracle reports infeasible demands and spent budgets") {
  Instance heavy = figure_instance("fig1", 1).instance;
  heavy.demand = 7;
  CHECK(kind_of([&] { oracle_integral(heavy); }) == ErrorKind::Infeasible);

  Instance inst = figure_instance("fig1", 1).instance;
  OracleBudget tight_paths;
  tight_paths.max_paths = 3;
  try {
    oracle_integral(inst, tight_paths);
    FAIL("expected PathBudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PathBudgetExceeded);
    CHECK(e.count() == 4);
  }

  OracleBudget tight_vectors;
  tight_vectors.max_vectors = 0;
  try {
    oracle_integral(inst, tight_vectors);
    FAIL("expected PathBudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PathBudgetExceeded);
    CHECK(e.count() == 1);
  }
}

TEST_CASE("fractional oracle agrees with the integral one on unit costs") {
  Instance inst = figure_instance("fig1", 1).instance;
  Solution sol = oracle_fractional(inst);
  CHECK(sol.solver == SolverTag::OracleFrac);
  CHECK(sol.value == 6);
  CHECK(sol.peak == 4);
}

TEST_CASE("fractional oracle finds the zero-peak routing") {
  Instance inst = figure_instance("fig2", 3, Int(10)).instance;
  inst.demand = 5;
  Solution sol = oracle_fractional(inst);
  CHECK(sol.value == 5);
  CHECK(sol.peak == 0);
  CHECK(member_arcs(sol) == std::vector<std::vector<int>>{{0, 2, 3}});
}

TEST_CASE("fractional oracle needs unit costs or a long horizon") {
  Instance gap = figure_instance("fig3", 3).instance;
  CHECK(kind_of([&] { oracle_fractional(gap); }) ==
        ErrorKind::UnsupportedCostStructure);
  Instance heavy = figure_instance("fig1", 1).instance;
  heavy.demand = 7;
  CHECK(kind_of([&] { oracle_fractional(heavy); }) == ErrorKind::Infeasible);
}

TEST_CASE("profile oracle handles arbitrary cost structures") {
  Instance gap2 = figure_instance("fig3", 2).instance;
  Solution sol = oracle_profile_lp(gap2);
  CHECK(sol.value >= 1);
  CHECK(sol.peak == Rat(1, 2));

  Instance gap3 = figure_instance("fig3", 3).instance;
  CHECK(oracle_profile_lp(gap3).peak == Rat(1, 3));

  Instance fig1 = figure_instance("fig1", 1).instance;
  CHECK(oracle_profile_lp(fig1).peak == 4);

  Instance mixed = figure_instance("fig2", 3).instance;
  CHECK(oracle_profile_lp(mixed).peak == 3);
}

TEST_CASE("automatic dispatch picks the intended solver per class") {
  CHECK(choose_algorithm(figure_instance("fig1", 1).instance) ==
        SolverTag::Mssp);
  CHECK(choose_algorithm(parallel_pair()) == SolverTag::Mssp);
  CHECK(choose_algorithm(figure_instance("fig2", 3, Int(10)).instance) ==
        SolverTag::LongHorizon);
  Instance partial = figure_instance("fig2", 3, Int(10)).instance;
  partial.demand = 5;
  CHECK(choose_algorithm(partial) == SolverTag::ColGenLong);
  CHECK(choose_algorithm(figure_instance("greedy", 3, Int(5)).instance) ==
        SolverTag::ColGenUnit);
  CHECK(choose_algorithm(figure_instance("fig2", 3).instance) ==
        SolverTag::OracleInt);
  CHECK(choose_algorithm(figure_instance("fig3", 3).instance) ==
        SolverTag::OracleInt);
}

TEST_CASE("solution documents carry the full summary") {
  Solution sol = solve_mssp(figure_instance("fig1", 1).instance);
  nlohmann::json doc = nlohmann::json::parse(serialize_solution(sol));
  CHECK(doc.at("solver") == "mssp");
  CHECK(doc.at("value") == "6");
  CHECK(doc.at("peak_cost") == "4");
  CHECK(doc.at("argmax_theta") == 3);
  CHECK(doc.at("certificate") == "GreedyExhausted");
  CHECK(doc.at("paths").size() == 2);
  CHECK(doc.at("paths")[0].at("arcs") == nlohmann::json({1, 4}));
  CHECK(doc.at("paths")[0].at("rate") == "1");
}

TEST_CASE("decomposition documents round-trip") {
  Instance inst = figure_instance("fig1", 1).instance;
  Solution sol = solve_mssp(inst);
  std::string text = serialize_decomposition(sol.flow);
  TRFlow parsed = parse_decomposition(inst.network, inst.horizon, text);
  REQUIRE(parsed.paths.size() == sol.flow.paths.size());
  for (std::size_t i = 0; i < parsed.paths.size(); ++i) {
    CHECK(parsed.paths[i].path.arcs() == sol.flow.paths[i].path.arcs());
    CHECK(parsed.paths[i].rate == sol.flow.paths[i].rate);
  }
}

TEST_CASE("decomposition parser accepts integer rates and rejects junk") {
  Instance inst = figure_instance("fig1", 1).instance;
  TRFlow f = parse_decomposition(
      inst.network, inst.horizon,
      R"({"paths": [{"arcs": [1, 4], "rate": 1},
                    {"arcs": [0, 2, 3, 5], "rate": "1/2"}]})");
  CHECK(f.paths[0].rate == 1);
  CHECK(f.paths[1].rate == Rat(1, 2));

  auto parse_kind = [&](const std::string& text) {
    return kind_of(
        [&] { parse_decomposition(inst.network, inst.horizon, text); });
  };
  CHECK(parse_kind("{") == ErrorKind::Parse);
  CHECK(parse_kind(R"({"routes": []})") == ErrorKind::Parse);
  CHECK(parse_kind(R"({"paths": [{"arcs": [1, 4], "rate": 0.5}]})") ==
        ErrorKind::Parse);
  CHECK(parse_kind(R"({"paths": [{"arcs": [1, 5], "rate": 1}]})") ==
        ErrorKind::Validation);
}
