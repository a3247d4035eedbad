// Python bindings: a thin JSON-string facade over the solver library. All
// values cross the boundary as JSON or CSV text so rationals stay exact.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "mpctrf/errors.hpp"
#include "mpctrf/reductions.hpp"
#include "mpctrf/series_parallel.hpp"
#include "mpctrf/solvers.hpp"

namespace py = pybind11;
using namespace mpctrf;

namespace {

Solution dispatch(const Instance& inst, const std::string& algorithm,
                  const OracleBudget& budget) {
  SolverTag tag = SolverTag::OracleInt;
  if (algorithm == "auto") {
    tag = choose_algorithm(inst);
  } else {
    bool known = false;
    for (SolverTag t :
         {SolverTag::FoFu, SolverTag::Mssp, SolverTag::LongHorizon,
          SolverTag::ColGenLong, SolverTag::ColGenUnit, SolverTag::OracleInt,
          SolverTag::OracleFrac}) {
      if (algorithm == solver_tag_name(t)) {
        tag = t;
        known = true;
        break;
      }
    }
    if (!known) fail(ErrorKind::Parse, "unknown algorithm: " + algorithm);
  }
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
}

Instance instance_with_demand(const std::string& instance_json,
                              const std::string& demand) {
  Instance inst = parse_instance(instance_json);
  if (!demand.empty()) {
    if (demand == "max") {
      inst.demand = max_trf_value(inst);
    } else {
      inst.demand = parse_rational(demand);
      if (inst.demand < 0) {
        fail(ErrorKind::Validation, "demand must be nonnegative");
      }
    }
  }
  return inst;
}

std::string check_report(const std::string& instance_json) {
  Instance inst = parse_instance(instance_json);
  const Network& net = inst.network;
  nlohmann::json report;
  SPResult sp = is_series_parallel(net);
  report["series_parallel"] = sp.series_parallel;
  if (sp.series_parallel) {
    report["decomposition_tree"] = sp.tree->to_string();
  } else {
    report["reason"] = sp.reason;
  }
  try {
    report["horizon_class"] = horizon_class_name(classify_horizon(inst));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoPath) throw;
    report["horizon_class"] = "NoPath";
  }
  report["unit_cost"] = net.unit_cost();
  report["acyclic"] = net.core_acyclic();
  return report.dump(2) + "\n";
}

}  // namespace

PYBIND11_MODULE(_mpctrf, m) {
  m.doc() = "Minimum peak-cost temporally repeated flow solvers";

  static py::exception<Error> solver_error(m, "SolverError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      std::string text =
          std::string(error_kind_name(e.kind())) + ": " + e.what();
      py::set_error(solver_error, text.c_str());
    }
  });

  m.def(
      "validate_instance",
      [](const std::string& text) {
        return serialize_instance(parse_instance(text));
      },
      py::arg("instance_json"),
      "Parse and re-serialize an instance document (canonical form).");

  m.def(
      "solve",
      [](const std::string& instance_json, const std::string& algorithm,
         const std::string& demand, long long max_paths,
         long long max_vectors) {
        Instance inst = instance_with_demand(instance_json, demand);
        OracleBudget budget;
        budget.max_paths = max_paths;
        budget.max_vectors = max_vectors;
        return serialize_solution(dispatch(inst, algorithm, budget));
      },
      py::arg("instance_json"), py::arg("algorithm") = "auto",
      py::arg("demand") = "", py::arg("max_paths") = 100000,
      py::arg("max_vectors") = 1000000,
      "Solve an instance; returns the solution document as JSON text.");

  m.def(
      "evaluate",
      [](const std::string& instance_json,
         const std::string& decomposition_json) {
        Instance inst = parse_instance(instance_json);
        TRFlow flow = parse_decomposition(inst.network, inst.horizon,
                                          decomposition_json);
        CostProfile profile = cost_profile(flow);
        nlohmann::json doc{{"value", rat_to_string(trf_value(flow))},
                           {"peak_cost", rat_to_string(profile.peak)},
                           {"argmax_theta", int_to_string(profile.argmax)}};
        return doc.dump(2) + "\n";
      },
      py::arg("instance_json"), py::arg("decomposition_json"),
      "Evaluate a decomposition document: value, peak cost, argmax.");

  m.def(
      "profile_csv",
      [](const std::string& instance_json,
         const std::string& decomposition_json) {
        Instance inst = parse_instance(instance_json);
        TRFlow flow = parse_decomposition(inst.network, inst.horizon,
                                          decomposition_json);
        return profile_to_csv(cost_profile(flow));
      },
      py::arg("instance_json"), py::arg("decomposition_json"),
      "Cost profile of a decomposition as CSV breakpoint rows.");

  m.def("check", &check_report, py::arg("instance_json"),
        "Structural report: series-parallel, horizon class, unit costs.");

  m.def(
      "generate_figure",
      [](const std::string& name, int k, long long horizon) {
        GenResult result = figure_instance(name, k, Int(horizon));
        return py::make_tuple(serialize_instance(result.instance),
                              result.mapping.dump(2) + "\n");
      },
      py::arg("name"), py::arg("k") = 3, py::arg("horizon") = -1,
      "Reference instance (fig1|fig2|fig3|greedy); returns (instance, "
      "mapping).");

  m.def(
      "generate_3sat",
      [](const std::string& dimacs_text) {
        GenResult result = gen_3sat(parse_dimacs(dimacs_text));
        return py::make_tuple(serialize_instance(result.instance),
                              result.mapping.dump(2) + "\n");
      },
      py::arg("dimacs_text"),
      "3-SAT reduction instance from DIMACS text; returns (instance, "
      "mapping).");

  m.def(
      "generate_subsetsum",
      [](const std::vector<long long>& values, long long target) {
        std::vector<Int> xs(values.begin(), values.end());
        GenResult result = gen_subsetsum(xs, Int(target));
        return py::make_tuple(serialize_instance(result.instance),
                              result.mapping.dump(2) + "\n");
      },
      py::arg("values"), py::arg("target"),
      "Subset-Sum reduction instance; returns (instance, mapping).");
}
