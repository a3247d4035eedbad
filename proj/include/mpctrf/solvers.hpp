#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mpctrf/trf.hpp"

namespace mpctrf {

enum class SolverTag {
  FoFu,          // max-value temporally repeated flow via min-cost circulation
  Mssp,          // successive shortest paths on unit-cost series-parallel
  LongHorizon,   // integral peak-minimal max flow on long-horizon instances
  ColGenLong,    // column generation, long-horizon objective
  ColGenUnit,    // column generation, unit-cost acyclic objective
  OracleInt,     // exhaustive integral search
  OracleFrac,    // full-column exact LP
};

const char* solver_tag_name(SolverTag tag);

enum class CertificateKind {
  CirculationOptimal,
  GreedyExhausted,
  ColGenConverged,
  OracleExhaustive,
  None,
};

const char* certificate_kind_name(CertificateKind kind);

struct Solution {
  SolverTag solver;
  TRFlow flow;
  Rat value;
  Rat peak;
  Int argmax;
  CertificateKind certificate = CertificateKind::None;
  nlohmann::json certificate_detail;  // solver-specific evidence
};

struct OracleBudget {
  long long max_paths = 100000;
  long long max_vectors = 1000000;
};

// Maximum-value temporally repeated flow: extend the network with a
// sink-to-source return arc of cost -T against per-arc transit costs, take a
// min-cost circulation, and turn its T-bounded path decomposition into a TR
// flow. The result is integral and its value is the maximum over all flows
// over time with horizon T. Throws Error(NoPath) when the sink is
// unreachable and Error(DemandExceedsMax) when the instance demand exceeds
// the computed maximum.
Solution solve_max_trf(const Instance& inst);

// Maximum TR flow value (demand ignored).
Rat max_trf_value(const Instance& inst);

// Peak-minimal solution on long-horizon instances (every path transit
// <= T/2, checked via classify_horizon; violations raise
// Error(HorizonNotLong)). At demand == max value the solution is integral,
// found by a min-cost circulation under auxiliary costs that minimize
// sum_a cost(a) transit(a) x(a) among maximum flows. For smaller demands the
// optimum is fractional in general and the call delegates to column
// generation.
Solution solve_long_horizon(const Instance& inst);

// Greedy peak-minimal solver for unit-cost series-parallel instances
// (preconditions checked, errors NotUnitCost / NotSeriesParallel): repeatedly
// send along the shortest-transit residual path (lexicographic arc-index
// tie-break) at the bottleneck rate, capped so the value lands exactly on the
// demand. Throws Error(Infeasible) when the demand is unreachable.
Solution solve_mssp(const Instance& inst);

enum class ColGenMode { LongHorizon, UnitCostAcyclic };

// Column generation over source-sink paths. The restricted master minimizes
// the peak-cost proxy (long-horizon: sum_{a in p} cost(a) transit(a);
// unit-cost acyclic: min(transit(p), T - transit(p))) subject to arc
// capacities and value >= demand, solved exactly; pricing is an exact
// shortest-path problem (two on acyclic networks in unit-cost mode, split on
// which side of the weight minimum the path falls). Terminates when the
// minimum reduced cost is nonnegative; the final duals are returned in the
// certificate detail. The master is seeded with the max-flow decomposition,
// so it is feasible exactly when demand <= max value.
Solution solve_colgen(const Instance& inst, ColGenMode mode,
                      long long max_paths = 100000);

struct MasterSolution {
  std::vector<Rat> rates;      // one per column
  std::vector<Rat> pi;         // capacity duals, one per arc, >= 0
  Rat z;                       // demand dual, >= 0
  Rat objective;
};

// Restricted master LP: minimize sum_j kappa[j] y_j subject to per-arc
// capacity sums <= u_a and sum_j (T - transit(columns[j])) y_j >= demand,
// y >= 0, solved exactly. Throws Error(MasterInfeasible) when the demand
// exceeds the columns' combined throughput and Error(Validation) when no
// columns are supplied.
MasterSolution solve_restricted_master(const Network& net, const Int& horizon,
                                       const std::vector<Path>& columns,
                                       const std::vector<Rat>& kappa,
                                       const Rat& demand);

// Exhaustive integral oracle: enumerate simple source-sink paths with
// transit <= T, then all integral rate vectors that respect capacities, and
// return a feasible vector minimizing (peak, lexicographic decomposition).
// Throws Error(PathBudgetExceeded) when either budget runs out and
// Error(Infeasible) when no vector reaches the demand.
Solution oracle_integral(const Instance& inst, const OracleBudget& budget = {});

// Exact fractional oracle: the full-column master LP over all simple
// source-sink paths with transit <= T. Requires a cost structure whose peak
// equals the LP objective: unit costs, or a long-horizon instance. Otherwise
// throws Error(UnsupportedCostStructure).
Solution oracle_fractional(const Instance& inst,
                           const OracleBudget& budget = {});

// Exact fractional oracle for arbitrary cost structures: minimize an
// epigraph variable z subject to cost_at(theta) <= z at every integer theta,
// over all simple source-sink paths with transit <= T. Exact because the
// cost profile is piecewise linear with breakpoints at integers. Slower than
// oracle_fractional (T + |A| + 1 rows) but makes no structural assumptions.
Solution oracle_profile_lp(const Instance& inst,
                           const OracleBudget& budget = {});

// Dispatch rule used by `solve --algorithm auto`: mssp when unit-cost and
// series-parallel; long-horizon when the class is Long and demand == max
// value; colgen-long when Long; colgen-unit when unit-cost and acyclic;
// otherwise the integral oracle.
SolverTag choose_algorithm(const Instance& inst);

nlohmann::json solution_to_json(const Solution& sol);
std::string serialize_solution(const Solution& sol);

// Decomposition document {"paths": [{"arcs": [...], "rate": "p/q"}, ...]},
// validated against the instance network and horizon.
TRFlow parse_decomposition(const Network& net, const Int& horizon,
                           const std::string& json_text);
std::string serialize_decomposition(const TRFlow& flow);

}  // namespace mpctrf
