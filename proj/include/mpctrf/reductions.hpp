#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "mpctrf/network.hpp"
#include "mpctrf/solvers.hpp"

namespace mpctrf {

// A CNF formula with exactly three literals per clause after padding.
// Literals are signed 1-based variable indices: +i is X_i, -i is the negation.
struct Formula3SAT {
  int num_variables = 0;
  std::vector<std::array<int, 3>> clauses;
};

// Parses DIMACS CNF. Clauses with fewer than three distinct literals are
// padded with fresh dummy variables (one per padded slot); clauses with more
// than three literals or with a variable appearing twice are rejected.
Formula3SAT parse_dimacs(const std::string& text);

// Output of an instance generator: the flow instance plus a machine-readable
// sidecar describing how solutions map back to the source problem.
struct GenResult {
  Instance instance;
  nlohmann::json mapping;
};

// Flow instance whose optimal peak is at most 2 iff the formula is
// satisfiable. Per variable X_i there are two disjoint chains of m+1 unit
// arcs from the source, merging at a node v_i that feeds the sink; the j-th
// chain arc carries cost 1 iff the opposite literal of X_i occurs in clause
// j. Horizon m+4, demand n.
GenResult gen_3sat(const Formula3SAT& formula);

struct SatDecode {
  bool satisfiable = false;
  std::vector<bool> assignment;  // assignment[i] is the value of X_{i+1}
  Rat peak;
};

// Reads a solution of a gen_3sat instance back into an assignment:
// X_i = true iff the positive chain of X_i carries flow. satisfiable iff
// peak <= 2. Throws NonIntegralSolution if the solution value is below the
// instance demand or some chain carries fractional flow.
SatDecode decode_3sat(const Solution& solution, const nlohmann::json& mapping);

// Parallel unit-capacity unit-cost arcs with transit T - x_i, horizon
// T = 2 max x_i, demand L. Some subset of xs sums to L iff the instance
// admits an integral solution with value = peak = L.
GenResult gen_subsetsum(const std::vector<Int>& xs, const Int& target);

// A constrained-shortest-path instance: find an s-t path with total length
// at most the bound and minimum total cost.
struct CspArc {
  int tail = -1;
  int head = -1;
  Int cost;    // kappa_a >= 0
  Int length;  // ell_a >= 1
};

struct CspInput {
  std::vector<std::string> nodes;
  int source = -1;
  int sink = -1;
  std::vector<CspArc> arcs;
  Int length_bound;
};

// Unit-capacity instance with a fresh super-source whose long-horizon
// optimum encodes the CSP optimum. Transits and costs are scaled by
// lcm(ell_a) to stay integral; the sidecar records the scale factors
// (mapping["peak_scale"] divides the raw peak back to CSP cost units).
GenResult gen_csp(const CspInput& csp);

// Named reference instances used throughout the tests:
//   "fig1"    fixed 5-node network with two maximum decompositions of
//             different peak (k ignored),
//   "fig2"    value/peak trade-off family, horizon 2k+2,
//   "fig3"    integrality-gap family with fractional optimum 1/k,
//   "greedy"  family where path-by-path greedy stalls at 2k-1 of 2k+2.
// horizon_override, when >= 0, replaces the canonical horizon.
GenResult figure_instance(const std::string& name, int k,
                          const Int& horizon_override = Int(-1));

}  // namespace mpctrf
