#include <doctest.h>

#include <vector>

#include "mpctrf/errors.hpp"
#include "mpctrf/lp.hpp"
#include "mpctrf/solvers.hpp"

using namespace mpctrf;

TEST_CASE("lp_solve_exact solves a one-variable bound problem") {
  LinearProgram lp;
  lp.objective = {Rat(-1)};
  lp.rows = {{Rat(1)}};
  lp.rhs = {Rat(5)};
  lp.sense = {RowSense::LE};
  LPSolution sol = lp_solve_exact(lp);
  REQUIRE(sol.status == LPStatus::Optimal);
  CHECK(sol.x[0] == 5);
  CHECK(sol.objective == -5);
  CHECK(sol.dual[0] == -1);
}

TEST_CASE("lp_solve_exact detects infeasibility") {
  LinearProgram lp;
  lp.objective = {Rat(0)};
  lp.rows = {{Rat(1)}, {Rat(1)}};
  lp.rhs = {Rat(1), Rat(2)};
  lp.sense = {RowSense::LE, RowSense::GE};
  CHECK(lp_solve_exact(lp).status == LPStatus::Infeasible);
}

TEST_CASE("lp_solve_exact detects unboundedness") {
  LinearProgram lp;
  lp.objective = {Rat(-1)};
  lp.rows = {{Rat(1)}};
  lp.rhs = {Rat(0)};
  lp.sense = {RowSense::GE};
  CHECK(lp_solve_exact(lp).status == LPStatus::Unbounded);
}

TEST_CASE("lp_solve_exact handles equality rows") {
  LinearProgram lp;
  lp.objective = {Rat(1), Rat(1)};
  lp.rows = {{Rat(1), Rat(1)}, {Rat(1), Rat(0)}};
  lp.rhs = {Rat(3), Rat(2)};
  lp.sense = {RowSense::EQ, RowSense::LE};
  LPSolution sol = lp_solve_exact(lp);
  REQUIRE(sol.status == LPStatus::Optimal);
  CHECK(sol.objective == 3);
  CHECK(sol.x[0] + sol.x[1] == 3);
  CHECK(sol.x[0] <= 2);
}

TEST_CASE("lp_solve_exact flips negative right-hand sides") {
  LinearProgram lp;
  lp.objective = {Rat(1)};
  lp.rows = {{Rat(-1)}};
  lp.rhs = {Rat(-2)};
  lp.sense = {RowSense::LE};
  LPSolution sol = lp_solve_exact(lp);
  REQUIRE(sol.status == LPStatus::Optimal);
  CHECK(sol.x[0] == 2);
  CHECK(sol.objective == 2);
}

TEST_CASE("lp_solve_exact yields exact fractions") {
  LinearProgram lp;
  lp.objective = {Rat(1)};
  lp.rows = {{Rat(3)}};
  lp.rhs = {Rat(1)};
  lp.sense = {RowSense::GE};
  LPSolution sol = lp_solve_exact(lp);
  REQUIRE(sol.status == LPStatus::Optimal);
  CHECK(sol.x[0] == Rat(1, 3));
  CHECK(sol.dual[0] == Rat(1, 3));
}

namespace {

Network single_arc_network(long long capacity, long long transit) {
  return Network({"s", "t"}, 0, 1,
                 {Arc{0, 1, Int(capacity), Int(transit), Int(1)}});
}

}  // namespace

TEST_CASE("restricted master covers half the demand per unit of window") {
  Network net = single_arc_network(1, 2);
  std::vector<Path> columns{Path(net, {0})};
  std::vector<Rat> kappa{Rat(2)};
  MasterSolution m =
      solve_restricted_master(net, Int(4), columns, kappa, Rat(1));
  CHECK(m.rates[0] == Rat(1, 2));
  CHECK(m.objective == 1);
  CHECK(m.pi[0] == 0);
  CHECK(m.z == 1);
}

TEST_CASE("restricted master is infeasible beyond the column throughput") {
  Network net = single_arc_network(1, 2);
  std::vector<Path> columns{Path(net, {0})};
  std::vector<Rat> kappa{Rat(2)};
  try {
    solve_restricted_master(net, Int(4), columns, kappa, Rat(3));
    FAIL("expected MasterInfeasible");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MasterInfeasible);
  }
}

TEST_CASE("duplicate columns leave exactly one basic") {
  Network net = single_arc_network(1, 2);
  std::vector<Path> columns{Path(net, {0}), Path(net, {0})};
  std::vector<Rat> kappa{Rat(2), Rat(2)};
  MasterSolution m =
      solve_restricted_master(net, Int(4), columns, kappa, Rat(1));
  CHECK(m.objective == 1);
  CHECK(m.rates[0] + m.rates[1] == Rat(1, 2));
  int nonzero = 0;
  for (const Rat& r : m.rates) {
    if (r != 0) ++nonzero;
  }
  CHECK(nonzero == 1);
}

TEST_CASE("restricted master requires at least one column") {
  Network net = single_arc_network(1, 2);
  try {
    solve_restricted_master(net, Int(4), {}, {}, Rat(1));
    FAIL("expected Validation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Validation);
  }
}

TEST_CASE("restricted master duals price capacity and demand") {
  // Two parallel arcs, transits 1 and 2, horizon 10: windows 9 and 8.
  Network net({"s", "t"}, 0, 1,
              {Arc{0, 1, Int(1), Int(1), Int(1)},
               Arc{0, 1, Int(1), Int(2), Int(1)}});
  std::vector<Path> columns{Path(net, {0}), Path(net, {1})};
  std::vector<Rat> kappa{Rat(1), Rat(2)};
  MasterSolution m =
      solve_restricted_master(net, Int(10), columns, kappa, Rat(12));
  // Demand 12 needs the fast arc saturated (9) plus 3/8 of the slow arc.
  CHECK(m.rates[0] == 1);
  CHECK(m.rates[1] == Rat(3, 8));
  CHECK(m.objective == Rat(7, 4));
  // Reduced costs of both columns vanish: kappa + pi - window z = 0.
  CHECK(m.z == Rat(1, 4));
  CHECK(m.pi[0] == Rat(5, 4));
  CHECK(m.pi[1] == 0);
}
