#pragma once

#include <vector>

#include "mpctrf/paths.hpp"

namespace mpctrf {

// Arc flow vector indexed by arc. Exact rational entries; the circulation
// routines only ever produce integral values on integral data.
struct StaticFlow {
  std::vector<Rat> x;

  explicit StaticFlow(int arc_count = 0) : x(arc_count) {}
};

// Net outflow at the source.
Rat flow_value(const Network& net, const StaticFlow& f);

// Capacity bounds and conservation at every node except source and sink.
bool is_feasible_flow(const Network& net, const StaticFlow& f);

// Conservation at every node.
bool is_circulation(const Network& net, const StaticFlow& f);

Rat flow_cost(const std::vector<Int>& cost, const StaticFlow& f);

// Network extended with a sink-to-source return arc (appended last, so
// original arc indices are unchanged). The return arc capacity is the sum of
// capacities leaving the source; its circulation cost is supplied by the
// caller (e.g. -T). `circulation_cost` holds the signed per-arc costs to use
// for min_cost_circulation, original arcs first.
struct ExtendedNetwork {
  Network net;
  int return_arc;
  std::vector<Int> circulation_cost;
};

ExtendedNetwork extend_with_return_arc(const Network& net,
                                       std::vector<Int> arc_costs,
                                       const Int& return_cost);

struct CirculationResult {
  StaticFlow flow;
  Int cost;
  int cycles_cancelled = 0;
  // True when a final negative-cycle scan of the residual network came up
  // empty; this is the optimality certificate.
  bool certified = false;
};

// Minimum-cost circulation by cycle cancelling: start from the zero
// circulation and cancel residual negative cycles (found by Bellman-Ford with
// a fixed arc scan order) until none remain. Exact and deterministic;
// integral on integral data.
CirculationResult min_cost_circulation(const Network& net,
                                       const std::vector<Int>& cost);

struct FlowMember {
  Path path;  // source-sink path or cycle
  Rat rate;   // > 0
};

// Path/cycle decomposition of a feasible flow: repeatedly peel the
// lexicographically smallest (by arc index) source-sink path in the positive
// support at its bottleneck rate while the flow still has positive value,
// then peel the remaining support into cycles. At most arc_count() members;
// deterministic given arc order; members reconstruct the flow arc for arc.
std::vector<FlowMember> decompose(const Network& net, const StaticFlow& f);

// Induced arc flow of a list of members.
StaticFlow flow_of_members(const Network& net,
                           const std::vector<FlowMember>& members);

// Decomposition into source-sink paths with transit <= T. Cycles in the
// support are dropped when their cost under `cycle_cost` is zero (removing
// them changes neither value nor cost); a nonzero-cost cycle or a path with
// transit > T means the input was not a min-cost circulation for this horizon
// and raises Error(NotTBounded).
std::vector<FlowMember> t_bounded_decomposition(const Network& net,
                                                const StaticFlow& f,
                                                const Int& horizon,
                                                const std::vector<Int>& cycle_cost);

}  // namespace mpctrf
