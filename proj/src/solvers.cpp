#include "mpctrf/solvers.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>

#include "mpctrf/errors.hpp"
#include "mpctrf/lp.hpp"
#include "mpctrf/series_parallel.hpp"

namespace mpctrf {

using nlohmann::json;

const char* solver_tag_name(SolverTag tag) {
  switch (tag) {
    case SolverTag::FoFu: return "fofu";
    case SolverTag::Mssp: return "mssp";
    case SolverTag::LongHorizon: return "long-horizon";
    case SolverTag::ColGenLong: return "colgen-long";
    case SolverTag::ColGenUnit: return "colgen-unit";
    case SolverTag::OracleInt: return "oracle-int";
    case SolverTag::OracleFrac: return "oracle-frac";
  }
  return "?";
}

const char* certificate_kind_name(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::CirculationOptimal: return "CirculationOptimal";
    case CertificateKind::GreedyExhausted: return "GreedyExhausted";
    case CertificateKind::ColGenConverged: return "ColGenConverged";
    case CertificateKind::OracleExhaustive: return "OracleExhaustive";
    case CertificateKind::None: return "None";
  }
  return "?";
}

namespace {

bool sink_reachable(const Network& net) {
  std::vector<char> seen(net.node_count(), 0);
  std::deque<int> queue{net.source()};
  seen[net.source()] = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (v == net.sink()) return true;
    for (int a : net.out_arcs(v)) {
      int w = net.arc(a).head;
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  }
  return false;
}

Solution build_solution(SolverTag tag, const Network& net, const Int& horizon,
                        std::vector<TRPath> paths, CertificateKind cert,
                        json detail) {
  TRFlow flow = make_tr_flow(net, horizon, std::move(paths));
  Rat value = trf_value(flow);
  CostProfile profile = cost_profile(flow);
  return Solution{tag,           std::move(flow), std::move(value),
                  profile.peak,  profile.argmax,  cert,
                  std::move(detail)};
}

std::vector<TRPath> members_to_tr(const std::vector<FlowMember>& members) {
  std::vector<TRPath> paths;
  for (const FlowMember& m : members) paths.push_back(TRPath{m.path, m.rate});
  return paths;
}

struct FoFuOutcome {
  std::vector<FlowMember> members;
  Rat value;
  int cycles_cancelled = 0;
  Int circulation_cost;
};

// Maximum-value TR flow as a T-bounded decomposition of a min-cost
// circulation against transit costs and a -T return arc.
FoFuOutcome run_fofu(const Instance& inst) {
  const Network& net = inst.network;
  if (!sink_reachable(net)) {
    fail(ErrorKind::NoPath, "sink unreachable from source");
  }
  std::vector<Int> transit_cost;
  for (const Arc& a : net.arcs()) transit_cost.push_back(a.transit);
  ExtendedNetwork ext =
      extend_with_return_arc(net, transit_cost, -inst.horizon);
  CirculationResult circ = min_cost_circulation(ext.net, ext.circulation_cost);

  StaticFlow x(net.arc_count());
  for (int a = 0; a < net.arc_count(); ++a) x.x[a] = circ.flow.x[a];

  FoFuOutcome out;
  out.members = t_bounded_decomposition(net, x, inst.horizon, transit_cost);
  out.value = 0;
  for (const FlowMember& m : out.members) {
    out.value += m.rate * Rat(inst.horizon - m.path.transit());
  }
  out.cycles_cancelled = circ.cycles_cancelled;
  out.circulation_cost = circ.cost;
  return out;
}

}  // namespace

Rat max_trf_value(const Instance& inst) { return run_fofu(inst).value; }

Solution solve_max_trf(const Instance& inst) {
  FoFuOutcome fofu = run_fofu(inst);
  if (inst.demand > fofu.value) {
    fail(ErrorKind::DemandExceedsMax,
         "demand " + rat_to_string(inst.demand) +
             " exceeds maximum value " + rat_to_string(fofu.value));
  }
  json detail{{"cycles_cancelled", fofu.cycles_cancelled},
              {"circulation_cost", int_to_string(fofu.circulation_cost)}};
  return build_solution(SolverTag::FoFu, inst.network, inst.horizon,
                        members_to_tr(fofu.members),
                        CertificateKind::CirculationOptimal, std::move(detail));
}

Solution solve_long_horizon(const Instance& inst) {
  HorizonClass cls = classify_horizon(inst);
  if (cls != HorizonClass::Long) {
    fail(ErrorKind::HorizonNotLong,
         std::string("instance classifies as ") + horizon_class_name(cls));
  }
  Rat dmax = max_trf_value(inst);
  if (inst.demand > dmax) {
    fail(ErrorKind::DemandExceedsMax,
         "demand " + rat_to_string(inst.demand) +
             " exceeds maximum value " + rat_to_string(dmax));
  }
  if (inst.demand < dmax) {
    return solve_colgen(inst, ColGenMode::LongHorizon);
  }

  const Network& net = inst.network;
  // Among maximum flows, minimize sum_a cost(a) transit(a) x(a) by a single
  // circulation with value scaled into the cost: M exceeds any reachable
  // transit-cost total, so value dominates and the transit-cost term breaks
  // ties.
  Int M = 1;
  for (const Arc& a : net.arcs()) M += a.cost * a.transit * a.capacity;
  std::vector<Int> aux_cost;
  for (const Arc& a : net.arcs()) aux_cost.push_back((M + a.cost) * a.transit);
  ExtendedNetwork ext =
      extend_with_return_arc(net, aux_cost, -M * inst.horizon);
  CirculationResult circ = min_cost_circulation(ext.net, ext.circulation_cost);

  StaticFlow x(net.arc_count());
  for (int a = 0; a < net.arc_count(); ++a) x.x[a] = circ.flow.x[a];
  std::vector<FlowMember> members =
      t_bounded_decomposition(net, x, inst.horizon, aux_cost);

  json detail{{"big_m", int_to_string(M)},
              {"cycles_cancelled", circ.cycles_cancelled},
              {"circulation_cost", int_to_string(circ.cost)}};
  Solution sol = build_solution(SolverTag::LongHorizon, net, inst.horizon,
                                members_to_tr(members),
                                CertificateKind::CirculationOptimal,
                                std::move(detail));
  if (sol.value != dmax) {
    fail(ErrorKind::Internal, "auxiliary circulation lost flow value");
  }
  if (sol.peak != long_horizon_peak(sol.flow)) {
    fail(ErrorKind::Internal, "peak does not match its closed form");
  }
  return sol;
}

namespace {

// Topological order of the nodes both reachable from the source and
// co-reaching the sink; empty when that subgraph has a cycle.
std::vector<int> core_order(const Network& net, std::vector<char>* core_out) {
  auto bfs = [&](int start, bool forward) {
    std::vector<char> seen(net.node_count(), 0);
    std::deque<int> queue{start};
    seen[start] = 1;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int a : forward ? net.out_arcs(v) : net.in_arcs(v)) {
        int w = forward ? net.arc(a).head : net.arc(a).tail;
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
      }
    }
    return seen;
  };
  auto from_s = bfs(net.source(), true);
  auto to_t = bfs(net.sink(), false);
  std::vector<char> core(net.node_count(), 0);
  int core_count = 0;
  for (int v = 0; v < net.node_count(); ++v) {
    core[v] = from_s[v] && to_t[v];
    if (core[v]) ++core_count;
  }
  std::vector<int> indeg(net.node_count(), 0);
  for (const Arc& a : net.arcs()) {
    if (core[a.tail] && core[a.head]) ++indeg[a.head];
  }
  std::deque<int> queue;
  for (int v = 0; v < net.node_count(); ++v) {
    if (core[v] && indeg[v] == 0) queue.push_back(v);
  }
  std::vector<int> order;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    order.push_back(v);
    for (int a : net.out_arcs(v)) {
      int w = net.arc(a).head;
      if (core[w] && --indeg[w] == 0) queue.push_back(w);
    }
  }
  if (static_cast<int>(order.size()) != core_count) order.clear();
  if (core_out) *core_out = core;
  return order;
}

}  // namespace

Solution solve_mssp(const Instance& inst) {
  const Network& net = inst.network;
  if (!net.unit_cost()) {
    fail(ErrorKind::NotUnitCost, "greedy solver requires unit costs");
  }
  SPResult sp = is_series_parallel(net);
  if (!sp.series_parallel) {
    fail(ErrorKind::NotSeriesParallel,
         "greedy solver requires a series-parallel network: " + sp.reason);
  }

  std::vector<char> core;
  std::vector<int> order = core_order(net, &core);
  if (order.empty()) {
    fail(ErrorKind::Internal, "series-parallel network must be acyclic");
  }

  const Int& T = inst.horizon;
  std::vector<Rat> free_cap;
  for (const Arc& a : net.arcs()) free_cap.push_back(Rat(a.capacity));

  struct Label {
    bool set = false;
    Int dist;
    std::vector<int> arcs;
  };

  Rat value = 0;
  std::vector<TRPath> members;
  int iterations = 0;
  while (value < inst.demand) {
    // Shortest-transit path among arcs with free capacity, lexicographically
    // smallest arc sequence on transit ties.
    std::vector<Label> label(net.node_count());
    label[net.source()].set = true;
    label[net.source()].dist = 0;
    for (int v : order) {
      if (!label[v].set) continue;
      for (int a : net.out_arcs(v)) {
        if (free_cap[a] <= 0) continue;
        const Arc& arc = net.arc(a);
        if (!core[arc.head]) continue;
        Int cand_dist = label[v].dist + arc.transit;
        std::vector<int> cand_arcs = label[v].arcs;
        cand_arcs.push_back(a);
        Label& h = label[arc.head];
        if (!h.set || cand_dist < h.dist ||
            (cand_dist == h.dist && cand_arcs < h.arcs)) {
          h.set = true;
          h.dist = std::move(cand_dist);
          h.arcs = std::move(cand_arcs);
        }
      }
    }
    const Label& sink = label[net.sink()];
    if (!sink.set) {
      fail(ErrorKind::Infeasible,
           "free capacity exhausted at value " + rat_to_string(value) +
               " of demand " + rat_to_string(inst.demand));
    }
    if (sink.dist >= T) {
      fail(ErrorKind::Infeasible,
           "every remaining path needs the whole horizon");
    }
    Path p(net, sink.arcs);
    Rat room = free_cap[sink.arcs.front()];
    for (int a : sink.arcs) room = std::min(room, free_cap[a]);
    Rat window(T - p.transit());
    Rat need = (inst.demand - value) / window;
    Rat rate = std::min(room, need);
    for (int a : sink.arcs) free_cap[a] -= rate;
    value += rate * window;
    members.push_back(TRPath{std::move(p), rate});
    ++iterations;
  }

  json detail{{"iterations", iterations}};
  Solution sol =
      build_solution(SolverTag::Mssp, net, T, std::move(members),
                     CertificateKind::GreedyExhausted, std::move(detail));
  if (sol.value != inst.demand) {
    fail(ErrorKind::Internal, "greedy overshot the demand");
  }
  return sol;
}

namespace {

// Per-unit-rate cost contribution of a path at each integer time 0..T.
std::vector<Rat> path_cost_contrib(const Network& net, const Path& p,
                                   const Int& T) {
  std::vector<Rat> contrib(static_cast<std::size_t>(T) + 1, Rat(0));
  Rat window(T - p.transit());
  const auto& arcs = p.arcs();
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const Arc& arc = net.arc(arcs[i]);
    if (arc.cost == 0 || arc.transit == 0) continue;
    Rat start(p.transit_prefix(static_cast<int>(i)));
    Rat end = start + window;
    for (Int theta = 0; theta <= T; ++theta) {
      Rat lo(Int(theta - arc.transit));
      if (lo < start) lo = start;
      Rat hi{theta};
      if (hi > end) hi = end;
      if (hi > lo) {
        contrib[static_cast<std::size_t>(theta)] += Rat(arc.cost) * (hi - lo);
      }
    }
  }
  return contrib;
}

Rat long_proxy_cost(const Network& net, const Path& p) {
  Rat total = 0;
  for (int a : p.arcs()) {
    total += Rat(net.arc(a).cost * net.arc(a).transit);
  }
  return total;
}

struct PricedPath {
  bool found = false;
  Rat reduced_cost;
  std::vector<int> arcs;
};

// Long-horizon pricing: minimize sum_{a in p} (cost transit + pi + z transit)
// minus T z over source-sink paths. Weights are nonnegative, so a
// deterministic Bellman-Ford sweep finds the minimizer.
PricedPath price_long(const Network& net, const Int& T,
                      const std::vector<Rat>& pi, const Rat& z) {
  const int n = net.node_count();
  const int m = net.arc_count();
  std::vector<Rat> weight(m);
  for (int a = 0; a < m; ++a) {
    const Arc& arc = net.arc(a);
    weight[a] = Rat(arc.cost * arc.transit) + pi[a] + z * Rat(arc.transit);
  }
  std::vector<std::optional<Rat>> dist(n);
  std::vector<int> parent(n, -1);
  dist[net.source()] = Rat(0);
  for (int pass = 0; pass < n; ++pass) {
    bool any = false;
    for (int a = 0; a < m; ++a) {
      const Arc& arc = net.arc(a);
      if (!dist[arc.tail]) continue;
      Rat cand = *dist[arc.tail] + weight[a];
      if (!dist[arc.head] || cand < *dist[arc.head]) {
        dist[arc.head] = cand;
        parent[arc.head] = a;
        any = true;
      }
    }
    if (!any) break;
  }
  PricedPath out;
  if (!dist[net.sink()]) return out;
  out.found = true;
  out.reduced_cost = *dist[net.sink()] - Rat(T) * z;
  std::vector<int> arcs;
  int v = net.sink();
  int guard = 0;
  while (v != net.source()) {
    if (parent[v] < 0 || ++guard > n) {
      fail(ErrorKind::Internal, "pricing parent chain broken");
    }
    arcs.push_back(parent[v]);
    v = net.arc(parent[v]).tail;
  }
  std::reverse(arcs.begin(), arcs.end());
  out.arcs = std::move(arcs);
  return out;
}

// Unit-cost acyclic pricing. The reduced cost of a path is
//   min(transit, T - transit) + sum pi - (T - transit) z,
// which is the pointwise minimum of two expressions linear in
// (sum pi, transit). Both are minimized exactly by a DP over states
// (node, transit) on the acyclic core.
PricedPath price_unit(const Network& net, const Int& T,
                      const std::vector<char>& core,
                      const std::vector<int>& order,
                      const std::vector<Rat>& pi, const Rat& z) {
  struct State {
    Rat pi_sum;
    int parent_arc = -1;
    Int parent_transit;
  };
  std::vector<std::map<Int, State>> dp(net.node_count());
  dp[net.source()][Int(0)] = State{Rat(0), -1, Int(0)};
  for (int v : order) {
    for (const auto& [tau, state] : dp[v]) {
      for (int a : net.out_arcs(v)) {
        const Arc& arc = net.arc(a);
        if (!core[arc.head]) continue;
        Int ntau = tau + arc.transit;
        if (ntau > T) continue;
        Rat nsum = state.pi_sum + pi[a];
        auto it = dp[arc.head].find(ntau);
        if (it == dp[arc.head].end() || nsum < it->second.pi_sum) {
          dp[arc.head][ntau] = State{nsum, a, tau};
        }
      }
    }
  }

  PricedPath out;
  std::optional<Int> best_tau;
  for (const auto& [tau, state] : dp[net.sink()]) {
    Rat side_a = state.pi_sum + (Rat(1) + z) * Rat(tau) - Rat(T) * z;
    Rat side_b =
        state.pi_sum + (z - Rat(1)) * Rat(tau) - Rat(T) * (z - Rat(1));
    Rat rc = std::min(side_a, side_b);
    if (!out.found || rc < out.reduced_cost) {
      out.found = true;
      out.reduced_cost = rc;
      best_tau = tau;
    }
  }
  if (!out.found) return out;

  std::vector<int> arcs;
  int v = net.sink();
  Int tau = *best_tau;
  while (v != net.source()) {
    const State& state = dp[v].at(tau);
    if (state.parent_arc < 0) {
      fail(ErrorKind::Internal, "pricing parent chain broken");
    }
    arcs.push_back(state.parent_arc);
    tau = state.parent_transit;
    v = net.arc(state.parent_arc).tail;
  }
  std::reverse(arcs.begin(), arcs.end());
  out.arcs = std::move(arcs);
  return out;
}

}  // namespace

MasterSolution solve_restricted_master(const Network& net, const Int& horizon,
                                       const std::vector<Path>& columns,
                                       const std::vector<Rat>& kappa,
                                       const Rat& demand) {
  if (columns.empty()) {
    fail(ErrorKind::Validation, "master requires at least one column");
  }
  if (columns.size() != kappa.size()) {
    fail(ErrorKind::Validation, "one objective coefficient per column");
  }
  const int m = net.arc_count();
  const int n = static_cast<int>(columns.size());
  LinearProgram lp;
  lp.objective = kappa;
  lp.rows.assign(m + 1, std::vector<Rat>(n, Rat(0)));
  lp.rhs.resize(m + 1);
  lp.sense.resize(m + 1);
  for (int a = 0; a < m; ++a) {
    lp.rhs[a] = Rat(net.arc(a).capacity);
    lp.sense[a] = RowSense::LE;
  }
  lp.rhs[m] = demand;
  lp.sense[m] = RowSense::GE;
  for (int j = 0; j < n; ++j) {
    for (int a : columns[j].arcs()) lp.rows[a][j] += 1;
    lp.rows[m][j] = Rat(horizon - columns[j].transit());
  }

  LPSolution sol = lp_solve_exact(lp);
  if (sol.status == LPStatus::Infeasible) {
    fail(ErrorKind::MasterInfeasible,
         "restricted master infeasible: demand exceeds reachable value");
  }
  if (sol.status != LPStatus::Optimal) {
    fail(ErrorKind::Internal, "master cannot be unbounded");
  }
  MasterSolution out;
  out.rates = std::move(sol.x);
  out.objective = std::move(sol.objective);
  out.pi.resize(m);
  for (int a = 0; a < m; ++a) out.pi[a] = -sol.dual[a];
  out.z = std::move(sol.dual[m]);
  return out;
}

Solution solve_colgen(const Instance& inst, ColGenMode mode,
                      long long max_paths) {
  const Network& net = inst.network;
  const Int& T = inst.horizon;

  std::vector<char> core;
  std::vector<int> order;
  if (mode == ColGenMode::LongHorizon) {
    HorizonClass cls = classify_horizon(inst);
    if (cls != HorizonClass::Long) {
      fail(ErrorKind::HorizonNotLong,
           std::string("instance classifies as ") + horizon_class_name(cls));
    }
  } else {
    if (!net.unit_cost()) {
      fail(ErrorKind::NotUnitCost, "unit-cost pricing requires unit costs");
    }
    order = core_order(net, &core);
    if (order.empty()) {
      fail(ErrorKind::UnsupportedCostStructure,
           "unit-cost pricing requires an acyclic network");
    }
    if (!sink_reachable(net)) {
      fail(ErrorKind::NoPath, "sink unreachable from source");
    }
  }

  auto kappa_of = [&](const Path& p) {
    return mode == ColGenMode::LongHorizon ? long_proxy_cost(net, p)
                                           : Rat(path_weight(p, T));
  };

  if (inst.demand == 0) {
    json detail{{"iterations", 0}, {"columns", 0}};
    return build_solution(mode == ColGenMode::LongHorizon
                              ? SolverTag::ColGenLong
                              : SolverTag::ColGenUnit,
                          net, T, {}, CertificateKind::ColGenConverged,
                          std::move(detail));
  }

  // Seed with the maximum-flow decomposition so the master is feasible
  // exactly when the demand is reachable at all.
  std::vector<Path> columns;
  std::set<std::vector<int>> column_set;
  for (const FlowMember& m : run_fofu(inst).members) {
    if (column_set.insert(m.path.arcs()).second) columns.push_back(m.path);
  }
  std::vector<Rat> kappa;
  for (const Path& p : columns) kappa.push_back(kappa_of(p));
  if (columns.empty()) {
    fail(ErrorKind::Infeasible, "demand exceeds the maximum reachable value");
  }

  int iterations = 0;
  MasterSolution master;
  Rat last_rc;
  for (;;) {
    ++iterations;
    try {
      master = solve_restricted_master(net, T, columns, kappa, inst.demand);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::MasterInfeasible) {
        fail(ErrorKind::Infeasible,
             "demand exceeds the maximum reachable value");
      }
      throw;
    }
    PricedPath priced =
        mode == ColGenMode::LongHorizon
            ? price_long(net, T, master.pi, master.z)
            : price_unit(net, T, core, order, master.pi, master.z);
    if (!priced.found) {
      fail(ErrorKind::Internal, "pricing found no path on a feasible master");
    }
    last_rc = priced.reduced_cost;
    if (priced.reduced_cost >= 0) break;
    if (!column_set.insert(priced.arcs).second) {
      fail(ErrorKind::Internal, "pricing regenerated an existing column");
    }
    if (static_cast<long long>(columns.size()) >= max_paths) {
      throw Error(ErrorKind::PathBudgetExceeded,
                  "column budget exhausted",
                  static_cast<long long>(columns.size()));
    }
    columns.emplace_back(net, priced.arcs);
    kappa.push_back(kappa_of(columns.back()));
  }

  std::vector<TRPath> members;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (master.rates[j] > 0) {
      members.push_back(TRPath{columns[j], master.rates[j]});
    }
  }

  json duals = json::array();
  for (const Rat& p : master.pi) duals.push_back(rat_to_string(p));
  json detail{{"iterations", iterations},
              {"columns", columns.size()},
              {"min_reduced_cost", rat_to_string(last_rc)},
              {"final_duals", {{"pi", std::move(duals)},
                               {"z", rat_to_string(master.z)}}}};
  Solution sol = build_solution(mode == ColGenMode::LongHorizon
                                    ? SolverTag::ColGenLong
                                    : SolverTag::ColGenUnit,
                                net, T, std::move(members),
                                CertificateKind::ColGenConverged,
                                std::move(detail));
  if (sol.peak != master.objective) {
    fail(ErrorKind::Internal, "profile peak differs from master objective");
  }
  if (sol.value < inst.demand) {
    fail(ErrorKind::Internal, "master solution misses the demand");
  }
  return sol;
}

namespace {

std::vector<Path> bounded_paths(const Instance& inst, long long max_paths) {
  std::vector<Path> all = enumerate_st_paths(inst.network, max_paths);
  std::vector<Path> fit;
  for (Path& p : all) {
    if (p.transit() <= inst.horizon) fit.push_back(std::move(p));
  }
  return fit;
}

}  // namespace

Solution oracle_integral(const Instance& inst, const OracleBudget& budget) {
  const Network& net = inst.network;
  const Int& T = inst.horizon;
  std::vector<Path> paths = bounded_paths(inst, budget.max_paths);
  const int k = static_cast<int>(paths.size());

  std::vector<std::vector<Rat>> contrib;
  std::vector<Rat> window;
  for (const Path& p : paths) {
    contrib.push_back(path_cost_contrib(net, p, T));
    window.push_back(Rat(T - p.transit()));
  }

  std::vector<Int> residual;
  for (const Arc& a : net.arcs()) residual.push_back(a.capacity);

  const std::size_t slots = static_cast<std::size_t>(T) + 1;
  std::vector<Rat> profile(slots, Rat(0));
  Rat value = 0;
  std::vector<Int> rates(k, Int(0));

  std::optional<Rat> best_peak;
  std::vector<Int> best_rates;
  long long leaves = 0;

  auto partial_peak = [&]() {
    Rat peak = 0;
    for (const Rat& v : profile) peak = std::max(peak, v);
    return peak;
  };
  auto max_rate = [&](int j) {
    Int r = residual[paths[j].arcs().front()];
    for (int a : paths[j].arcs()) r = std::min(r, residual[a]);
    return r;
  };

  auto search = [&](auto&& self, int i) -> void {
    if (i == k) {
      ++leaves;
      if (leaves > budget.max_vectors) {
        throw Error(ErrorKind::PathBudgetExceeded,
                    "integral search budget exhausted", leaves);
      }
      if (value >= inst.demand) {
        Rat peak = partial_peak();
        if (!best_peak || peak < *best_peak) {
          best_peak = peak;
          best_rates = rates;
        }
      }
      return;
    }
    // Optimistic completion bound on the value.
    Rat bound = value;
    for (int j = i; j < k; ++j) bound += window[j] * Rat(max_rate(j));
    if (bound < inst.demand) return;
    if (best_peak && partial_peak() >= *best_peak) return;

    Int r_max = max_rate(i);
    for (Int r = 0; r <= r_max; ++r) {
      rates[i] = r;
      if (r > 0) {
        for (int a : paths[i].arcs()) residual[a] -= 1;
        for (std::size_t t = 0; t < slots; ++t) profile[t] += contrib[i][t];
        value += window[i];
      }
      self(self, i + 1);
    }
    Int used = rates[i];
    rates[i] = 0;
    for (int a : paths[i].arcs()) residual[a] += used;
    for (std::size_t t = 0; t < slots; ++t) {
      profile[t] -= Rat(used) * contrib[i][t];
    }
    value -= Rat(used) * window[i];
  };
  search(search, 0);

  if (!best_peak) {
    fail(ErrorKind::Infeasible,
         "no integral rate vector reaches demand " +
             rat_to_string(inst.demand));
  }

  std::vector<TRPath> members;
  for (int j = 0; j < k; ++j) {
    if (best_rates[j] > 0) {
      members.push_back(TRPath{paths[j], Rat(best_rates[j])});
    }
  }
  json detail{{"paths", k}, {"vectors_considered", leaves}};
  Solution sol = build_solution(SolverTag::OracleInt, net, T,
                                std::move(members),
                                CertificateKind::OracleExhaustive,
                                std::move(detail));
  if (sol.peak != *best_peak) {
    fail(ErrorKind::Internal, "search peak mismatch");
  }
  return sol;
}

namespace {

Solution oracle_lp_common(const Instance& inst, const OracleBudget& budget,
                          bool epigraph) {
  const Network& net = inst.network;
  const Int& T = inst.horizon;

  bool unit = net.unit_cost();
  if (!epigraph && !unit) {
    HorizonClass cls = HorizonClass::Unknown;
    try {
      cls = classify_horizon(inst);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoPath) throw;
    }
    if (cls != HorizonClass::Long) {
      fail(ErrorKind::UnsupportedCostStructure,
           "objective form needs unit costs or a long horizon");
    }
  }

  std::vector<Path> paths = bounded_paths(inst, budget.max_paths);
  const int k = static_cast<int>(paths.size());
  const int m = net.arc_count();

  LinearProgram lp;
  int rows = 0;
  int t_rows = 0;
  if (epigraph) {
    t_rows = static_cast<int>(static_cast<long long>(T)) + 1;
    rows = t_rows + m + 1;
    lp.objective.assign(k + 1, Rat(0));
    lp.objective[k] = 1;  // the epigraph variable bounds every breakpoint
  } else {
    rows = m + 1;
    lp.objective.resize(k);
    for (int j = 0; j < k; ++j) {
      lp.objective[j] = unit ? Rat(path_weight(paths[j], T))
                             : long_proxy_cost(net, paths[j]);
    }
  }
  const int cols = epigraph ? k + 1 : k;
  lp.rows.assign(rows, std::vector<Rat>(cols, Rat(0)));
  lp.rhs.assign(rows, Rat(0));
  lp.sense.assign(rows, RowSense::LE);

  int row = 0;
  if (epigraph) {
    for (int j = 0; j < k; ++j) {
      std::vector<Rat> contrib = path_cost_contrib(net, paths[j], T);
      for (int t = 0; t < t_rows; ++t) lp.rows[t][j] = contrib[t];
    }
    for (int t = 0; t < t_rows; ++t) {
      lp.rows[t][k] = -1;
      lp.rhs[t] = 0;
      lp.sense[t] = RowSense::LE;
    }
    row = t_rows;
  }
  for (int a = 0; a < m; ++a, ++row) {
    for (int j = 0; j < k; ++j) {
      if (paths[j].contains_arc(a)) lp.rows[row][j] = 1;
    }
    lp.rhs[row] = Rat(net.arc(a).capacity);
    lp.sense[row] = RowSense::LE;
  }
  for (int j = 0; j < k; ++j) {
    lp.rows[row][j] = Rat(T - paths[j].transit());
  }
  lp.rhs[row] = inst.demand;
  lp.sense[row] = RowSense::GE;

  LPSolution lps = lp_solve_exact(lp);
  if (lps.status == LPStatus::Infeasible) {
    fail(ErrorKind::Infeasible,
         "no fractional flow reaches demand " + rat_to_string(inst.demand));
  }
  if (lps.status != LPStatus::Optimal) {
    fail(ErrorKind::Internal, "oracle program cannot be unbounded");
  }

  std::vector<TRPath> members;
  for (int j = 0; j < k; ++j) {
    if (lps.x[j] > 0) members.push_back(TRPath{paths[j], lps.x[j]});
  }
  json detail{{"columns", k},
              {"lp_objective", rat_to_string(lps.objective)}};
  Solution sol = build_solution(SolverTag::OracleFrac, net, T,
                                std::move(members),
                                CertificateKind::OracleExhaustive,
                                std::move(detail));
  if (sol.peak != lps.objective) {
    fail(ErrorKind::Internal, "profile peak differs from LP objective");
  }
  return sol;
}

}  // namespace

Solution oracle_fractional(const Instance& inst, const OracleBudget& budget) {
  return oracle_lp_common(inst, budget, false);
}

Solution oracle_profile_lp(const Instance& inst, const OracleBudget& budget) {
  return oracle_lp_common(inst, budget, true);
}

SolverTag choose_algorithm(const Instance& inst) {
  const Network& net = inst.network;
  if (net.unit_cost() && is_series_parallel(net).series_parallel) {
    return SolverTag::Mssp;
  }
  HorizonClass cls = classify_horizon(inst);
  if (cls == HorizonClass::Long) {
    if (inst.demand == max_trf_value(inst)) return SolverTag::LongHorizon;
    return SolverTag::ColGenLong;
  }
  if (net.unit_cost() && net.core_acyclic()) return SolverTag::ColGenUnit;
  return SolverTag::OracleInt;
}

json solution_to_json(const Solution& sol) {
  json paths = json::array();
  for (const TRPath& p : sol.flow.paths) {
    paths.push_back({{"arcs", p.path.arcs()}, {"rate", rat_to_string(p.rate)}});
  }
  json doc{{"solver", solver_tag_name(sol.solver)},
           {"value", rat_to_string(sol.value)},
           {"peak_cost", rat_to_string(sol.peak)},
           {"paths", std::move(paths)},
           {"certificate", certificate_kind_name(sol.certificate)},
           {"argmax_theta", static_cast<long long>(sol.argmax)}};
  if (!sol.certificate_detail.is_null()) {
    doc["certificate_detail"] = sol.certificate_detail;
  }
  return doc;
}

std::string serialize_solution(const Solution& sol) {
  return solution_to_json(sol).dump(2) + "\n";
}

TRFlow parse_decomposition(const Network& net, const Int& horizon,
                           const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("paths") || !doc["paths"].is_array()) {
    fail(ErrorKind::Parse, "decomposition must be {\"paths\": [...]}");
  }
  std::vector<TRPath> members;
  for (const json& jp : doc["paths"]) {
    if (!jp.is_object() || !jp.contains("arcs") || !jp["arcs"].is_array() ||
        !jp.contains("rate")) {
      fail(ErrorKind::Parse, "each path needs \"arcs\" and \"rate\"");
    }
    std::vector<int> arcs;
    for (const json& ja : jp["arcs"]) {
      if (!ja.is_number_integer()) {
        fail(ErrorKind::Parse, "arc indices must be integers");
      }
      arcs.push_back(ja.get<int>());
    }
    Rat rate;
    const json& jr = jp["rate"];
    if (jr.is_number_integer()) {
      rate = Rat(Int(jr.get<long long>()));
    } else if (jr.is_string()) {
      rate = parse_rational(jr.get<std::string>());
    } else {
      fail(ErrorKind::Parse, "rate must be an integer or 'p/q' string");
    }
    members.push_back(TRPath{Path(net, arcs), std::move(rate)});
  }
  return make_tr_flow(net, horizon, std::move(members));
}

std::string serialize_decomposition(const TRFlow& flow) {
  json paths = json::array();
  for (const TRPath& p : flow.paths) {
    paths.push_back({{"arcs", p.path.arcs()}, {"rate", rat_to_string(p.rate)}});
  }
  json doc{{"paths", std::move(paths)}};
  return doc.dump(2) + "\n";
}

}  // namespace mpctrf
