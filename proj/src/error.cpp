#include "qoi/error.hpp"

#include <utility>

namespace qoi {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotASublattice: return "NotASublattice";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::NegativeExponent: return "NegativeExponent";
    case ErrorCode::NotStrictlyIncreasing: return "NotStrictlyIncreasing";
    case ErrorCode::LexOrderViolated: return "LexOrderViolated";
    case ErrorCode::RedundantExponent: return "RedundantExponent";
    case ErrorCode::NoInteriorWeight: return "NoInteriorWeight";
    case ErrorCode::BlockStructureViolation: return "BlockStructureViolation";
    case ErrorCode::NonIntegralPairing: return "NonIntegralPairing";
    case ErrorCode::MalformedSeries: return "MalformedSeries";
    case ErrorCode::DivergentAtOrigin: return "DivergentAtOrigin";
    case ErrorCode::NoPairing: return "NoPairing";
    case ErrorCode::AmbiguousOrder: return "AmbiguousOrder";
    case ErrorCode::InconsistentSystem: return "InconsistentSystem";
    case ErrorCode::NotNormalizable: return "NotNormalizable";
    case ErrorCode::UnknownShape: return "UnknownShape";
    case ErrorCode::InvalidBranchData: return "InvalidBranchData";
    case ErrorCode::GroupMismatch: return "GroupMismatch";
    case ErrorCode::ValueTooLarge: return "ValueTooLarge";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, std::string detail)
    : std::runtime_error(std::string(error_name(code)) + ": " + detail),
      code_(code),
      detail_(std::move(detail)) {}

}  // namespace qoi
