#include "logitmp/error.hpp"

namespace logitmp {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::DuplicateBundle: return "DuplicateBundle";
    case Errc::NonPositiveAttraction: return "NonPositiveAttraction";
    case Errc::ItemOutOfRange: return "ItemOutOfRange";
    case Errc::MissingSingleton: return "MissingSingleton";
    case Errc::EmptyBundle: return "EmptyBundle";
    case Errc::UtilityOverflow: return "UtilityOverflow";
    case Errc::ZeroReference: return "ZeroReference";
    case Errc::UnknownBundle: return "UnknownBundle";
    case Errc::TooLarge: return "TooLarge";
    case Errc::NegativeWeight: return "NegativeWeight";
    case Errc::MissingRmc: return "MissingRmc";
    case Errc::BadBounds: return "BadBounds";
    case Errc::NotBigM: return "NotBigM";
    case Errc::WeightsNotSimplex: return "WeightsNotSimplex";
    case Errc::EmptyUncertainty: return "EmptyUncertainty";
    case Errc::InfeasibleConstraintSet: return "InfeasibleConstraintSet";
    case Errc::ConeUnsupported: return "ConeUnsupported";
    case Errc::BackendFailure: return "BackendFailure";
    case Errc::SeparationStalled: return "SeparationStalled";
    case Errc::InfeasibleCounts: return "InfeasibleCounts";
    case Errc::ParseError: return "ParseError";
    case Errc::SchemaVersionMismatch: return "SchemaVersionMismatch";
    case Errc::NoTransactions: return "NoTransactions";
    case Errc::Separation: return "Separation";
    case Errc::NotConverged: return "NotConverged";
    case Errc::DegenerateFold: return "DegenerateFold";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace logitmp
