#pragma once

#include <vector>

#include "mpctrf/static_flow.hpp"

namespace mpctrf {

struct TRPath {
  Path path;
  Rat rate;  // > 0
};

// A temporally repeated flow: send flow into each path p at constant rate
// y_p during [0, T - transit(p)). Owns a copy of the network so it can be
// evaluated standalone.
struct TRFlow {
  Network net;
  Int horizon;
  std::vector<TRPath> paths;
};

// Validates and builds a TR flow: members must be simple source-sink paths
// with transit <= T and positive rate, and the induced arc flow must respect
// capacities. Paths with transit == T are accepted and carry zero value.
TRFlow make_tr_flow(const Network& net, const Int& horizon,
                    std::vector<TRPath> paths);

// x(a) = sum of rates of paths through a.
StaticFlow induced_static_flow(const TRFlow& f);

// Value sum_p y_p (T - transit(p)); asserts it equals
// T val(x) - sum_a transit(a) x(a) for the induced static flow x.
Rat trf_value(const TRFlow& f);

// Flow rate entering arc a at time theta: sum of y_p over paths p through a
// whose inflow window [transit(p|s->tail), transit(p|s->tail) + T - transit(p))
// contains theta.
Rat arc_rate(const TRFlow& f, int a, const Rat& theta);

// Instantaneous cost sum_a cost(a) * (amount currently on arc a) at time
// theta, by the closed-form overlap of [theta - transit(a), theta) with each
// member's inflow window. Defined on [0, T]; the value at T is 0.
Rat cost_at(const TRFlow& f, const Rat& theta);

// Cost profile sampled at the integer breakpoints 0..T. The profile is
// piecewise linear between consecutive integers, so its maximum over [0, T)
// is attained at a breakpoint. argmax is floor(T/2) whenever that attains the
// peak, otherwise the smallest attaining breakpoint.
struct CostProfile {
  Int horizon;
  std::vector<Rat> values;  // values[theta] for theta = 0..T
  Rat peak;
  Int argmax;
  std::vector<Int> argmax_set;
};

CostProfile cost_profile(const TRFlow& f);

// Peak of the cost profile over [0, T).
Rat peak_cost(const TRFlow& f);

// Unit-cost closed form sum_p y_p * min(transit(p), T - transit(p)).
// Throws Error(NotUnitCost) unless every arc cost is 1.
Rat unit_cost_peak(const TRFlow& f);

// Long-horizon closed form sum_a cost(a) * transit(a) * x(a) for the induced
// static flow x. Throws Error(HorizonNotLong) unless every flow-carrying path
// has transit <= T/2.
Rat long_horizon_peak(const TRFlow& f);

// CSV rendering "theta,cost_numerator,cost_denominator", one row per integer
// breakpoint 0..T.
std::string profile_to_csv(const CostProfile& profile);

}  // namespace mpctrf
