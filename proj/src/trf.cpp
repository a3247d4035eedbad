#include "mpctrf/trf.hpp"

#include <algorithm>

#include "mpctrf/errors.hpp"

namespace mpctrf {

TRFlow make_tr_flow(const Network& net, const Int& horizon,
                    std::vector<TRPath> paths) {
  for (const TRPath& p : paths) {
    if (p.path.is_cycle() || !p.path.is_source_sink(net)) {
      fail(ErrorKind::Validation,
           "temporally repeated flow member is not a source-sink path");
    }
    if (p.path.transit() > horizon) {
      fail(ErrorKind::HorizonExceeded,
           "path transit " + int_to_string(p.path.transit()) +
               " exceeds horizon " + int_to_string(horizon));
    }
    if (p.rate <= 0) {
      fail(ErrorKind::Validation, "path rate must be positive");
    }
  }
  TRFlow f{net, horizon, std::move(paths)};
  StaticFlow x = induced_static_flow(f);
  for (int a = 0; a < net.arc_count(); ++a) {
    if (x.x[a] > Rat(net.arc(a).capacity)) {
      fail(ErrorKind::Validation,
           "induced flow exceeds capacity on arc " + std::to_string(a));
    }
  }
  return f;
}

StaticFlow induced_static_flow(const TRFlow& f) {
  StaticFlow x(f.net.arc_count());
  for (const TRPath& p : f.paths) {
    for (int a : p.path.arcs()) x.x[a] += p.rate;
  }
  return x;
}

Rat trf_value(const TRFlow& f) {
  Rat value = 0;
  for (const TRPath& p : f.paths) {
    value += p.rate * Rat(f.horizon - p.path.transit());
  }
  StaticFlow x = induced_static_flow(f);
  Rat check = Rat(f.horizon) * flow_value(f.net, x);
  for (int a = 0; a < f.net.arc_count(); ++a) {
    check -= Rat(f.net.arc(a).transit) * x.x[a];
  }
  if (value != check) {
    fail(ErrorKind::Internal, "value identity violated: " +
                                  rat_to_string(value) + " vs " +
                                  rat_to_string(check));
  }
  return value;
}

Rat arc_rate(const TRFlow& f, int a, const Rat& theta) {
  if (a < 0 || a >= f.net.arc_count()) {
    fail(ErrorKind::Validation, "arc index out of range");
  }
  Rat rate = 0;
  for (const TRPath& p : f.paths) {
    int pos = p.path.arc_position(a);
    if (pos < 0) continue;
    Rat start(p.path.transit_prefix(pos));
    Rat end = start + Rat(f.horizon - p.path.transit());
    if (start <= theta && theta < end) rate += p.rate;
  }
  return rate;
}

Rat cost_at(const TRFlow& f, const Rat& theta) {
  Rat total = 0;
  for (const TRPath& p : f.paths) {
    Rat window = Rat(f.horizon - p.path.transit());
    const auto& arcs = p.path.arcs();
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      const Arc& arc = f.net.arc(arcs[i]);
      if (arc.cost == 0 || arc.transit == 0) continue;
      // Amount on the arc at theta: inflow window overlapped with the
      // lookback interval [theta - transit, theta).
      Rat start(p.path.transit_prefix(static_cast<int>(i)));
      Rat end = start + window;
      Rat lo = theta - Rat(arc.transit);
      if (lo < start) lo = start;
      Rat hi = std::min(theta, end);
      if (hi > lo) total += Rat(arc.cost) * p.rate * (hi - lo);
    }
  }
  return total;
}

CostProfile cost_profile(const TRFlow& f) {
  CostProfile profile;
  profile.horizon = f.horizon;
  Int T = f.horizon;
  for (Int theta = 0; theta <= T; ++theta) {
    profile.values.push_back(cost_at(f, Rat(theta)));
  }
  profile.peak = 0;
  for (const Rat& v : profile.values) profile.peak = std::max(profile.peak, v);
  for (Int theta = 0; theta <= T; ++theta) {
    if (profile.values[static_cast<std::size_t>(theta)] == profile.peak) {
      profile.argmax_set.push_back(theta);
    }
  }
  Int half = T / 2;
  profile.argmax = profile.argmax_set.front();
  for (const Int& theta : profile.argmax_set) {
    if (theta == half) profile.argmax = half;
  }
  return profile;
}

Rat peak_cost(const TRFlow& f) { return cost_profile(f).peak; }

Rat unit_cost_peak(const TRFlow& f) {
  if (!f.net.unit_cost()) {
    fail(ErrorKind::NotUnitCost, "closed form requires every arc cost to be 1");
  }
  Rat peak = 0;
  for (const TRPath& p : f.paths) {
    peak += p.rate * Rat(path_weight(p.path, f.horizon));
  }
  return peak;
}

Rat long_horizon_peak(const TRFlow& f) {
  for (const TRPath& p : f.paths) {
    if (2 * p.path.transit() > f.horizon) {
      fail(ErrorKind::HorizonNotLong,
           "flow path transit " + int_to_string(p.path.transit()) +
               " exceeds half the horizon " + int_to_string(f.horizon));
    }
  }
  StaticFlow x = induced_static_flow(f);
  Rat peak = 0;
  for (int a = 0; a < f.net.arc_count(); ++a) {
    peak += Rat(f.net.arc(a).cost * f.net.arc(a).transit) * x.x[a];
  }
  return peak;
}

std::string profile_to_csv(const CostProfile& profile) {
  std::string out = "theta,cost_numerator,cost_denominator\n";
  for (std::size_t i = 0; i < profile.values.size(); ++i) {
    out += std::to_string(i);
    out += ",";
    out += numerator(profile.values[i]).str();
    out += ",";
    out += denominator(profile.values[i]).str();
    out += "\n";
  }
  return out;
}

}  // namespace mpctrf
