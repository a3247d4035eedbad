#include "mpctrf/reductions.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

#include "mpctrf/errors.hpp"

namespace mpctrf {

using nlohmann::json;

namespace {

json int_json(const Int& v) {
  if (v >= std::numeric_limits<long long>::min() &&
      v <= std::numeric_limits<long long>::max()) {
    return static_cast<long long>(v);
  }
  return v.str();
}

}  // namespace

Formula3SAT parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<long long> tokens;
  long long declared_vars = -1;
  long long declared_clauses = -1;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "c") continue;
    if (first == "p") {
      std::string fmt;
      if (!(ls >> fmt >> declared_vars >> declared_clauses) || fmt != "cnf" ||
          declared_vars < 0 || declared_clauses < 0) {
        fail(ErrorKind::Parse, "malformed DIMACS problem line");
      }
      continue;
    }
    ls.clear();
    ls.seekg(0);
    long long lit;
    while (ls >> lit) tokens.push_back(lit);
    if (!ls.eof()) fail(ErrorKind::Parse, "non-integer token in clause data");
  }

  std::vector<std::vector<int>> raw;
  std::vector<int> current;
  for (long long lit : tokens) {
    if (lit == 0) {
      raw.push_back(current);
      current.clear();
      continue;
    }
    if (lit < std::numeric_limits<int>::min() ||
        lit > std::numeric_limits<int>::max()) {
      fail(ErrorKind::Parse, "literal out of range");
    }
    current.push_back(static_cast<int>(lit));
  }
  if (!current.empty()) {
    fail(ErrorKind::Parse, "clause data not terminated by 0");
  }

  int max_var = 0;
  for (const auto& clause : raw) {
    if (clause.size() > 3) {
      fail(ErrorKind::Parse, "clause with more than three literals");
    }
    std::set<int> vars;
    for (int lit : clause) {
      int v = lit > 0 ? lit : -lit;
      if (!vars.insert(v).second) {
        fail(ErrorKind::Parse,
             "variable " + std::to_string(v) + " appears twice in a clause");
      }
      max_var = std::max(max_var, v);
    }
  }
  if (declared_vars >= 0 && max_var > declared_vars) {
    fail(ErrorKind::Parse, "literal exceeds declared variable count");
  }
  if (declared_clauses >= 0 &&
      static_cast<long long>(raw.size()) != declared_clauses) {
    fail(ErrorKind::Parse, "clause count differs from problem line");
  }

  Formula3SAT formula;
  formula.num_variables =
      declared_vars >= 0 ? static_cast<int>(declared_vars) : max_var;
  for (const auto& clause : raw) {
    std::array<int, 3> padded{};
    for (std::size_t i = 0; i < 3; ++i) {
      if (i < clause.size()) {
        padded[i] = clause[i];
      } else {
        // Fresh unconstrained dummy variable per padded slot.
        padded[i] = ++formula.num_variables;
      }
    }
    formula.clauses.push_back(padded);
  }
  return formula;
}

namespace {

void validate_formula(const Formula3SAT& f) {
  if (f.num_variables < 1 || f.clauses.empty()) {
    fail(ErrorKind::Validation, "formula needs variables and clauses");
  }
  for (const auto& clause : f.clauses) {
    std::set<int> vars;
    for (int lit : clause) {
      int v = lit > 0 ? lit : -lit;
      if (lit == 0 || v > f.num_variables) {
        fail(ErrorKind::Validation, "literal out of range");
      }
      if (!vars.insert(v).second) {
        fail(ErrorKind::Validation, "variable repeated within a clause");
      }
    }
  }
}

}  // namespace

GenResult gen_3sat(const Formula3SAT& formula) {
  validate_formula(formula);
  const int n = formula.num_variables;
  const int m = static_cast<int>(formula.clauses.size());

  std::vector<std::string> nodes{"s"};
  auto wname = [](bool positive, int i, int j) {
    return std::string(positive ? "w" : "wb") + std::to_string(i) + "_" +
           std::to_string(j);
  };
  for (int i = 1; i <= n; ++i) {
    for (int j = 0; j <= m; ++j) nodes.push_back(wname(true, i, j));
    for (int j = 0; j <= m; ++j) nodes.push_back(wname(false, i, j));
    nodes.push_back("v" + std::to_string(i));
  }
  nodes.push_back("t");

  auto idx = [&](const std::string& name) {
    auto it = std::find(nodes.begin(), nodes.end(), name);
    return static_cast<int>(it - nodes.begin());
  };
  const int s = 0;
  const int t = idx("t");

  // Clause j holds the literal making this chain arc expensive: the chain of
  // X_i tracks "X_i true", so it pays when clause j needs X_i false.
  auto chain_cost = [&](bool positive_chain, int i, int j) {
    int opposing = positive_chain ? -i : i;
    const auto& clause = formula.clauses[static_cast<std::size_t>(j) - 1];
    return std::find(clause.begin(), clause.end(), opposing) != clause.end()
               ? Int(1)
               : Int(0);
  };

  std::vector<Arc> arcs;
  json var_map = json::array();
  auto add_arc = [&](int tail, int head, const Int& cost) {
    arcs.push_back(Arc{tail, head, Int(1), Int(1), cost});
    return static_cast<int>(arcs.size()) - 1;
  };
  for (int i = 1; i <= n; ++i) {
    std::vector<int> true_arcs, false_arcs;
    for (bool positive : {true, false}) {
      std::vector<int>& list = positive ? true_arcs : false_arcs;
      list.push_back(add_arc(s, idx(wname(positive, i, 0)), Int(0)));
      for (int j = 1; j <= m; ++j) {
        list.push_back(add_arc(idx(wname(positive, i, j - 1)),
                               idx(wname(positive, i, j)),
                               chain_cost(positive, i, j)));
      }
      list.push_back(
          add_arc(idx(wname(positive, i, m)), idx("v" + std::to_string(i)),
                  Int(0)));
    }
    int collector = add_arc(idx("v" + std::to_string(i)), t, Int(0));
    true_arcs.push_back(collector);
    false_arcs.push_back(collector);
    var_map.push_back({{"variable", i},
                       {"true_arcs", true_arcs},
                       {"false_arcs", false_arcs}});
  }

  Network net(std::move(nodes), s, t, std::move(arcs));
  Instance inst{std::move(net), Int(m + 4), Rat(n)};

  json clauses = json::array();
  for (const auto& clause : formula.clauses) {
    clauses.push_back({clause[0], clause[1], clause[2]});
  }
  json mapping{{"problem", "3sat"},
               {"num_variables", n},
               {"num_clauses", m},
               {"threshold", 2},
               {"clauses", std::move(clauses)},
               {"variables", std::move(var_map)}};
  return GenResult{std::move(inst), std::move(mapping)};
}

SatDecode decode_3sat(const Solution& solution, const json& mapping) {
  if (!mapping.is_object() || mapping.value("problem", "") != "3sat") {
    fail(ErrorKind::Parse, "mapping is not a 3sat sidecar");
  }
  const int n = mapping.at("num_variables").get<int>();
  if (solution.value < Rat(n)) {
    fail(ErrorKind::NonIntegralSolution,
         "solution value " + rat_to_string(solution.value) +
             " below the demand " + std::to_string(n));
  }
  StaticFlow x = induced_static_flow(solution.flow);

  SatDecode out;
  out.peak = solution.peak;
  const json& variables = mapping.at("variables");
  for (int i = 0; i < n; ++i) {
    int true_first = variables.at(i).at("true_arcs").at(0).get<int>();
    int false_first = variables.at(i).at("false_arcs").at(0).get<int>();
    const Rat& yt = x.x[true_first];
    const Rat& yf = x.x[false_first];
    if (!((yt == 0 || yt == 1) && (yf == 0 || yf == 1) && yt + yf == 1)) {
      fail(ErrorKind::NonIntegralSolution,
           "variable gadget " + std::to_string(i + 1) +
               " carries fractional flow");
    }
    out.assignment.push_back(yt == 1);
  }
  Rat threshold(mapping.at("threshold").get<int>());
  out.satisfiable = solution.peak <= threshold;
  return out;
}

GenResult gen_subsetsum(const std::vector<Int>& xs, const Int& target) {
  if (xs.empty()) fail(ErrorKind::Validation, "empty value list");
  Int max_x = 0;
  for (const Int& x : xs) {
    if (x <= 0) fail(ErrorKind::Validation, "values must be positive");
    max_x = std::max(max_x, x);
  }
  if (target < 1) fail(ErrorKind::Validation, "target must be positive");

  Int T = 2 * max_x;
  std::vector<Arc> arcs;
  json values = json::array();
  for (const Int& x : xs) {
    arcs.push_back(Arc{0, 1, Int(1), T - x, Int(1)});
    values.push_back(int_json(x));
  }
  Network net({"s", "t"}, 0, 1, std::move(arcs));
  Instance inst{std::move(net), T, Rat(target)};
  json mapping{{"problem", "subsetsum"},
               {"values", std::move(values)},
               {"target", int_json(target)},
               {"horizon", int_json(T)}};
  return GenResult{std::move(inst), std::move(mapping)};
}

GenResult gen_csp(const CspInput& csp) {
  const int n = static_cast<int>(csp.nodes.size());
  if (csp.source < 0 || csp.source >= n || csp.sink < 0 || csp.sink >= n) {
    fail(ErrorKind::Validation, "source or sink index out of range");
  }
  if (csp.arcs.empty()) fail(ErrorKind::Validation, "no arcs");
  if (csp.length_bound < 0) {
    fail(ErrorKind::Validation, "length bound must be nonnegative");
  }
  Int lambda = 1;
  Int total_length = 0;
  for (const CspArc& a : csp.arcs) {
    if (a.tail < 0 || a.tail >= n || a.head < 0 || a.head >= n) {
      fail(ErrorKind::Validation, "arc endpoint out of range");
    }
    if (a.length < 1) fail(ErrorKind::Validation, "lengths must be positive");
    if (a.cost < 0) fail(ErrorKind::Validation, "costs must be nonnegative");
    lambda = lcm(lambda, a.length);
    total_length += a.length;
  }

  std::string super = "s'";
  while (std::find(csp.nodes.begin(), csp.nodes.end(), super) !=
         csp.nodes.end()) {
    super += "'";
  }
  std::vector<std::string> nodes{super};
  nodes.insert(nodes.end(), csp.nodes.begin(), csp.nodes.end());

  std::vector<Arc> arcs;
  arcs.push_back(Arc{0, csp.source + 1, Int(1), Int(0), Int(0)});
  Int total_transit = 0;
  for (const CspArc& a : csp.arcs) {
    Int transit = lambda * a.length;
    Int cost = lambda * a.cost / a.length;
    arcs.push_back(Arc{a.tail + 1, a.head + 1, Int(1), transit, cost});
    total_transit += transit;
  }
  Int T = 2 * total_transit;
  Int effective = std::min(csp.length_bound, total_length);
  Int demand = T - lambda * effective;

  Network net(std::move(nodes), 0, csp.sink + 1, std::move(arcs));
  Instance inst{std::move(net), T, Rat(demand)};
  json mapping{{"problem", "csp"},
               {"lcm", int_json(lambda)},
               {"peak_scale", int_json(lambda * lambda)},
               {"length_bound", int_json(csp.length_bound)},
               {"effective_bound", int_json(effective)},
               {"scaled_demand", int_json(demand)},
               {"arc_offset", 1}};
  return GenResult{std::move(inst), std::move(mapping)};
}

GenResult figure_instance(const std::string& name, int k,
                          const Int& horizon_override) {
  auto horizon = [&](const Int& canonical) {
    return horizon_override >= 0 ? horizon_override : canonical;
  };

  if (name == "fig1") {
    std::vector<Arc> arcs{
        {0, 1, 1, 1, 1}, {0, 2, 1, 1, 1}, {1, 2, 1, 1, 1},
        {2, 3, 1, 1, 1}, {2, 4, 1, 1, 1}, {3, 4, 1, 1, 1},
    };
    Network net({"s", "v1", "v2", "v3", "t"}, 0, 4, std::move(arcs));
    Instance inst{std::move(net), horizon(Int(6)), Rat(6)};
    json mapping{{"figure", "fig1"}, {"horizon", int_json(inst.horizon)}};
    return GenResult{std::move(inst), std::move(mapping)};
  }

  if (k < 1) fail(ErrorKind::Validation, "figure parameter must be positive");

  if (name == "fig2") {
    std::vector<Arc> arcs{
        {0, 1, 1, 1, 0},
        {1, 3, 1, Int(k), 1},
        {1, 2, 1, 1, 0},
        {2, 3, 1, Int(k), 0},
    };
    Network net({"s", "v", "w", "t"}, 0, 3, std::move(arcs));
    Int T = horizon(Int(2 * k + 2));
    Rat demand(T - k - 1);
    if (demand < 0) demand = 0;
    Instance inst{std::move(net), T, demand};
    json mapping{{"figure", "fig2"},
                 {"k", k},
                 {"horizon", int_json(inst.horizon)},
                 {"expected_value", rat_to_string(demand)},
                 {"reference_peak_without_repetition", 1}};
    return GenResult{std::move(inst), std::move(mapping)};
  }

  if (name == "fig3") {
    std::vector<std::string> nodes{"s", "v"};
    for (int i = 1; i <= k; ++i) {
      for (int j = 1; j < k; ++j) {
        nodes.push_back("w" + std::to_string(i) + "_" + std::to_string(j));
      }
    }
    nodes.push_back("t");
    auto idx = [&](const std::string& name_) {
      auto it = std::find(nodes.begin(), nodes.end(), name_);
      return static_cast<int>(it - nodes.begin());
    };
    int t = idx("t");
    std::vector<Arc> arcs{{0, 1, 1, 1, 0}};
    for (int i = 1; i <= k; ++i) {
      int prev = 1;  // node v
      for (int j = 1; j <= k; ++j) {
        int next = j < k ? idx("w" + std::to_string(i) + "_" +
                               std::to_string(j))
                         : t;
        Int cost = (j == i) ? 1 : 0;
        arcs.push_back(Arc{prev, next, Int(1), Int(1), cost});
        prev = next;
      }
    }
    Network net(std::move(nodes), 0, t, std::move(arcs));
    Instance inst{std::move(net), horizon(Int(k + 2)), Rat(1)};
    json mapping{{"figure", "fig3"},
                 {"k", k},
                 {"horizon", int_json(inst.horizon)},
                 {"integral_peak", 1},
                 {"fractional_peak", "1/" + std::to_string(k)}};
    return GenResult{std::move(inst), std::move(mapping)};
  }

  if (name == "greedy") {
    std::vector<Arc> arcs{
        {0, 1, 1, 1, 1},
        {0, 2, 1, Int(k), 1},
        {1, 2, 1, 1, 1},
        {1, 3, 1, Int(k), 1},
        {2, 3, 1, 1, 1},
    };
    Network net({"s", "v", "w", "t"}, 0, 3, std::move(arcs));
    Int T = horizon(Int(2 * k + 2));
    Rat demand(2 * (T - k - 1));
    if (demand < 0) demand = 0;
    Instance inst{std::move(net), T, demand};
    json mapping{{"figure", "greedy"},
                 {"k", k},
                 {"horizon", int_json(inst.horizon)},
                 {"naive_greedy_value", int_json(Int(2 * k - 1))},
                 {"optimal_value", rat_to_string(demand)}};
    return GenResult{std::move(inst), std::move(mapping)};
  }

  fail(ErrorKind::UnknownFigure, "unknown figure '" + name + "'");
}

}  // namespace mpctrf
