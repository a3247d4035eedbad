#include "mpctrf/errors.hpp"

namespace mpctrf {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
      return "parse";
    case ErrorKind::Validation:
      return "validation";
    case ErrorKind::HorizonExceeded:
      return "horizon-exceeded";
    case ErrorKind::PathBudgetExceeded:
      return "path-budget-exceeded";
    case ErrorKind::NotTBounded:
      return "not-t-bounded";
    case ErrorKind::NotUnitCost:
      return "not-unit-cost";
    case ErrorKind::HorizonNotLong:
      return "horizon-not-long";
    case ErrorKind::NoPath:
      return "no-path";
    case ErrorKind::Infeasible:
      return "infeasible";
    case ErrorKind::NotSeriesParallel:
      return "not-series-parallel";
    case ErrorKind::DemandExceedsMax:
      return "demand-exceeds-max";
    case ErrorKind::NonIntegralSolution:
      return "non-integral-solution";
    case ErrorKind::UnknownFigure:
      return "unknown-figure";
    case ErrorKind::MasterInfeasible:
      return "master-infeasible";
    case ErrorKind::UnsupportedCostStructure:
      return "unsupported-cost-structure";
    case ErrorKind::Internal:
      return "internal";
  }
  return "unknown";
}

}  // namespace mpctrf
