#pragma once

#include <stdexcept>
#include <string>

namespace mpctrf {

enum class ErrorKind {
  Parse,
  Validation,
  HorizonExceeded,
  PathBudgetExceeded,
  NotTBounded,
  NotUnitCost,
  HorizonNotLong,
  NoPath,
  Infeasible,
  NotSeriesParallel,
  DemandExceedsMax,
  NonIntegralSolution,
  UnknownFigure,
  MasterInfeasible,
  UnsupportedCostStructure,
  Internal,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  Error(ErrorKind kind, const std::string& message, long long count)
      : std::runtime_error(message), kind_(kind), count_(count) {}

  ErrorKind kind() const { return kind_; }

  // For budget errors: how many items were found before the budget ran out.
  long long count() const { return count_; }

 private:
  ErrorKind kind_;
  long long count_ = -1;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace mpctrf
