#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace logitmp {

enum class Errc {
  // hypergraph
  DuplicateBundle,
  NonPositiveAttraction,
  ItemOutOfRange,
  MissingSingleton,
  EmptyBundle,
  UtilityOverflow,
  ZeroReference,
  UnknownBundle,
  // choice model / enumeration
  TooLarge,
  // separation
  NegativeWeight,
  // formulations
  MissingRmc,
  BadBounds,
  NotBigM,
  WeightsNotSimplex,
  EmptyUncertainty,
  InfeasibleConstraintSet,
  // backend
  ConeUnsupported,
  BackendFailure,
  // cutting plane
  SeparationStalled,
  // instances
  InfeasibleCounts,
  ParseError,
  SchemaVersionMismatch,
  // estimation
  NoTransactions,
  Separation,
  NotConverged,
  DegenerateFold,
  InvalidArgument,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace logitmp
