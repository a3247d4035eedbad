#pragma once

#include <vector>

#include "mpctrf/rational.hpp"

namespace mpctrf {

enum class RowSense { LE, GE, EQ };

// min c'x  subject to  A x {<=,>=,==} b,  x >= 0.
struct LinearProgram {
  std::vector<std::vector<Rat>> rows;  // coefficients, one vector per row
  std::vector<Rat> rhs;
  std::vector<RowSense> sense;
  std::vector<Rat> objective;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

// Duals follow the convention reduced_cost(j) = c_j - sum_i dual_i * A_ij,
// with dual_i <= 0 on LE rows, >= 0 on GE rows, free on EQ rows.
struct LPSolution {
  LPStatus status = LPStatus::Infeasible;
  Rat objective;
  std::vector<Rat> x;
  std::vector<Rat> dual;
};

// Two-phase primal simplex on exact rationals with Bland's rule (smallest
// eligible index enters, smallest-index tie-break on the ratio test), so the
// run is deterministic and never cycles. On Optimal the solution is verified
// against primal feasibility, dual feasibility, complementary slackness and
// strong duality before being returned.
LPSolution lp_solve_exact(const LinearProgram& lp);

}  // namespace mpctrf
