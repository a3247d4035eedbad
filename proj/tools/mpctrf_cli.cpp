// Command-line front end: parse instances, dispatch solvers, emit solution
// JSON and profile CSV, generate reduction/reference instances, and report
// structural checks.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mpctrf/errors.hpp"
#include "mpctrf/reductions.hpp"
#include "mpctrf/series_parallel.hpp"
#include "mpctrf/solvers.hpp"

using json = nlohmann::json;
using namespace mpctrf;

namespace {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Infeasible:
    case ErrorKind::DemandExceedsMax:
    case ErrorKind::NoPath:
    case ErrorKind::MasterInfeasible:
      return 2;
    case ErrorKind::NotUnitCost:
    case ErrorKind::NotSeriesParallel:
    case ErrorKind::HorizonNotLong:
    case ErrorKind::HorizonExceeded:
    case ErrorKind::NotTBounded:
    case ErrorKind::UnsupportedCostStructure:
    case ErrorKind::NonIntegralSolution:
      return 3;
    case ErrorKind::PathBudgetExceeded:
      return 4;
    default:
      return 1;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Parse, "cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Parse, "cannot write file: " + path);
  out << text;
}

// Profile CSV lands next to the solution document, or on stdout after it
// when no output path is given.
void emit_profile(const TRFlow& flow, const std::string& output_path) {
  std::string csv = profile_to_csv(cost_profile(flow));
  if (output_path.empty()) {
    std::cout << "\n" << csv;
  } else {
    write_output(output_path + ".profile.csv", csv);
  }
}

struct SolveArgs {
  std::string instance_path;
  std::string algorithm = "auto";
  std::string demand;
  std::string output;
  bool emit_profile = false;
  long long max_paths = 100000;
  long long max_vectors = 1000000;
};

SolverTag parse_algorithm(const std::string& name) {
  for (SolverTag tag :
       {SolverTag::FoFu, SolverTag::Mssp, SolverTag::LongHorizon,
        SolverTag::ColGenLong, SolverTag::ColGenUnit, SolverTag::OracleInt,
        SolverTag::OracleFrac}) {
    if (name == solver_tag_name(tag)) return tag;
  }
  fail(ErrorKind::Parse, "unknown algorithm: " + name);
}

int run_solve(const SolveArgs& args) {
  Instance inst = parse_instance(read_file(args.instance_path));
  if (!args.demand.empty()) {
    if (args.demand == "max") {
      inst.demand = max_trf_value(inst);
    } else {
      inst.demand = parse_rational(args.demand);
      if (inst.demand < 0) {
        fail(ErrorKind::Validation, "demand must be nonnegative");
      }
    }
  }

  OracleBudget budget;
  budget.max_paths = args.max_paths;
  budget.max_vectors = args.max_vectors;

  SolverTag tag = args.algorithm == "auto" ? choose_algorithm(inst)
                                           : parse_algorithm(args.algorithm);
  Solution sol = [&] {
    switch (tag) {
      case SolverTag::FoFu:
        return solve_max_trf(inst);
      case SolverTag::Mssp:
        return solve_mssp(inst);
      case SolverTag::LongHorizon:
        return solve_long_horizon(inst);
      case SolverTag::ColGenLong:
        return solve_colgen(inst, ColGenMode::LongHorizon, budget.max_paths);
      case SolverTag::ColGenUnit:
        return solve_colgen(inst, ColGenMode::UnitCostAcyclic,
                            budget.max_paths);
      case SolverTag::OracleInt:
        return oracle_integral(inst, budget);
      case SolverTag::OracleFrac:
        return oracle_fractional(inst, budget);
    }
    fail(ErrorKind::Internal, "unhandled solver tag");
  }();

  write_output(args.output, serialize_solution(sol));
  if (args.emit_profile) emit_profile(sol.flow, args.output);
  return 0;
}

struct EvaluateArgs {
  std::string instance_path;
  std::string decomposition_path;
  std::string output;
  bool emit_profile = false;
};

int run_evaluate(const EvaluateArgs& args) {
  Instance inst = parse_instance(read_file(args.instance_path));
  TRFlow flow = parse_decomposition(inst.network, inst.horizon,
                                    read_file(args.decomposition_path));
  CostProfile profile = cost_profile(flow);
  json doc{{"value", rat_to_string(trf_value(flow))},
           {"peak_cost", rat_to_string(profile.peak)},
           {"argmax_theta", int_to_string(profile.argmax)}};
  write_output(args.output, doc.dump(2) + "\n");
  if (args.emit_profile) emit_profile(flow, args.output);
  return 0;
}

struct GenerateArgs {
  std::string kind;
  std::string input_path;
  std::string values;
  std::string target;
  int k = 3;
  std::string horizon;
  std::string output;
  std::string mapping;
};

CspInput parse_csp_input(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, std::string("invalid CSP JSON: ") + e.what());
  }
  auto require = [&](const char* key) -> const json& {
    if (!doc.contains(key)) {
      fail(ErrorKind::Parse, std::string("CSP input missing key: ") + key);
    }
    return doc[key];
  };
  CspInput csp;
  for (const json& name : require("nodes")) {
    if (!name.is_string()) fail(ErrorKind::Parse, "node ids must be strings");
    csp.nodes.push_back(name.get<std::string>());
  }
  auto node_index = [&](const std::string& name) {
    for (std::size_t i = 0; i < csp.nodes.size(); ++i) {
      if (csp.nodes[i] == name) return static_cast<int>(i);
    }
    fail(ErrorKind::Validation, "unknown node id: " + name);
  };
  csp.source = node_index(require("source").get<std::string>());
  csp.sink = node_index(require("sink").get<std::string>());
  auto to_int = [&](const json& v, const char* what) -> Int {
    if (v.is_number_integer()) return Int(v.get<long long>());
    if (v.is_string()) {
      Rat r = parse_rational(v.get<std::string>());
      if (!is_integral(r)) {
        fail(ErrorKind::Parse, std::string(what) + " must be an integer");
      }
      return numerator(r);
    }
    fail(ErrorKind::Parse, std::string(what) + " must be an integer");
  };
  for (const json& arc : require("arcs")) {
    if (!arc.is_object()) fail(ErrorKind::Parse, "arcs must be objects");
    auto need = [&](const char* key) -> const json& {
      if (!arc.contains(key)) {
        fail(ErrorKind::Parse, std::string("CSP arc missing key: ") + key);
      }
      return arc[key];
    };
    CspArc out;
    out.tail = node_index(need("tail").get<std::string>());
    out.head = node_index(need("head").get<std::string>());
    out.cost = to_int(need("cost"), "arc cost");
    out.length = to_int(need("length"), "arc length");
    csp.arcs.push_back(std::move(out));
  }
  csp.length_bound = to_int(require("length_bound"), "length bound");
  return csp;
}

int run_generate(const GenerateArgs& args) {
  GenResult result = [&] {
    if (args.kind == "3sat") {
      if (args.input_path.empty()) {
        fail(ErrorKind::Parse, "3sat requires a DIMACS input file");
      }
      return gen_3sat(parse_dimacs(read_file(args.input_path)));
    }
    if (args.kind == "subsetsum") {
      if (args.values.empty() || args.target.empty()) {
        fail(ErrorKind::Parse, "subsetsum requires --values and --target");
      }
      std::vector<Int> xs;
      std::stringstream ss(args.values);
      std::string item;
      while (std::getline(ss, item, ',')) {
        Rat r = parse_rational(item);
        if (!is_integral(r)) {
          fail(ErrorKind::Parse, "values must be integers");
        }
        xs.push_back(numerator(r));
      }
      Rat target = parse_rational(args.target);
      if (!is_integral(target)) {
        fail(ErrorKind::Parse, "target must be an integer");
      }
      return gen_subsetsum(xs, numerator(target));
    }
    if (args.kind == "csp") {
      if (args.input_path.empty()) {
        fail(ErrorKind::Parse, "csp requires a JSON input file");
      }
      return gen_csp(parse_csp_input(read_file(args.input_path)));
    }
    Int horizon_override(-1);
    if (!args.horizon.empty()) {
      Rat r = parse_rational(args.horizon);
      if (!is_integral(r)) {
        fail(ErrorKind::Parse, "horizon must be an integer");
      }
      horizon_override = numerator(r);
    }
    return figure_instance(args.kind, args.k, horizon_override);
  }();

  write_output(args.output, serialize_instance(result.instance));
  if (!args.mapping.empty()) {
    write_output(args.mapping, result.mapping.dump(2) + "\n");
  }
  return 0;
}

struct CheckArgs {
  std::string instance_path;
  std::string output;
};

int run_check(const CheckArgs& args) {
  Instance inst = parse_instance(read_file(args.instance_path));
  const Network& net = inst.network;

  json report;
  SPResult sp = is_series_parallel(net);
  report["series_parallel"] = sp.series_parallel;
  if (sp.series_parallel) {
    report["decomposition_tree"] = sp.tree->to_string();
  } else {
    report["reason"] = sp.reason;
    if (sp.witness) {
      const ForbiddenSubgraph& w = *sp.witness;
      report["witness"] = json{{"nodes",
                                {net.node_name(w.s0), net.node_name(w.v),
                                 net.node_name(w.w), net.node_name(w.t0)}},
                               {"path_sv", w.path_sv},
                               {"path_vw", w.path_vw},
                               {"path_wt", w.path_wt},
                               {"path_sw", w.path_sw},
                               {"path_vt", w.path_vt}};
    }
  }
  try {
    report["horizon_class"] = horizon_class_name(classify_horizon(inst));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoPath) throw;
    report["horizon_class"] = "NoPath";
  }
  report["unit_cost"] = net.unit_cost();
  report["acyclic"] = net.core_acyclic();
  write_output(args.output, report.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum peak-cost temporally repeated flow toolkit"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand(
      "solve", "Solve an instance and emit a solution document");
  solve->add_option("instance", solve_args.instance_path, "instance JSON file")
      ->required();
  solve->add_option("--algorithm", solve_args.algorithm,
                    "auto|fofu|mssp|long-horizon|colgen-long|colgen-unit|"
                    "oracle-int|oracle-frac");
  solve->add_option("--demand", solve_args.demand,
                    "demand override: a rational or 'max'");
  solve->add_option("--output", solve_args.output, "solution output path");
  solve->add_flag("--emit-profile", solve_args.emit_profile,
                  "also emit the cost profile CSV");
  solve->add_option("--max-paths", solve_args.max_paths,
                    "path/column enumeration budget");
  solve->add_option("--max-vectors", solve_args.max_vectors,
                    "integral oracle rate-vector budget");

  EvaluateArgs eval_args;
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "Evaluate a decomposition document against an instance");
  evaluate->add_option("instance", eval_args.instance_path, "instance JSON")
      ->required();
  evaluate
      ->add_option("decomposition", eval_args.decomposition_path,
                   "decomposition JSON")
      ->required();
  evaluate->add_option("--output", eval_args.output, "report output path");
  evaluate->add_flag("--emit-profile", eval_args.emit_profile,
                     "also emit the cost profile CSV");

  GenerateArgs gen_args;
  CLI::App* generate = app.add_subcommand(
      "generate", "Generate reduction or reference instances");
  generate
      ->add_option("kind", gen_args.kind,
                   "3sat|subsetsum|csp|fig1|fig2|fig3|greedy")
      ->required();
  generate->add_option("input", gen_args.input_path,
                       "input file (3sat: DIMACS, csp: JSON)");
  generate->add_option("--values", gen_args.values,
                       "subsetsum: comma-separated positive integers");
  generate->add_option("--target", gen_args.target, "subsetsum: target sum");
  generate->add_option("--k", gen_args.k, "family parameter");
  generate->add_option("--horizon", gen_args.horizon,
                       "override the canonical horizon");
  generate->add_option("--output", gen_args.output, "instance output path");
  generate->add_option("--mapping", gen_args.mapping,
                       "sidecar mapping output path");

  CheckArgs check_args;
  CLI::App* check = app.add_subcommand(
      "check", "Report structural properties of an instance");
  check->add_option("instance", check_args.instance_path, "instance JSON")
      ->required();
  check->add_option("--output", check_args.output, "report output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (solve->parsed()) return run_solve(solve_args);
    if (evaluate->parsed()) return run_evaluate(eval_args);
    if (generate->parsed()) return run_generate(gen_args);
    if (check->parsed()) return run_check(check_args);
    return 1;
  } catch (const Error& e) {
    json err{{"error", error_kind_name(e.kind())}, {"message", e.what()}};
    if (e.count() >= 0) err["count"] = e.count();
    std::cerr << err.dump() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    json err{{"error", "internal"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
}
