#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qoi {

/// Every domain failure raised by the library carries one of these codes.
enum class ErrorCode {
  DimensionMismatch,
  NotASublattice,
  BadDimension,
  NegativeExponent,
  NotStrictlyIncreasing,
  LexOrderViolated,
  RedundantExponent,
  NoInteriorWeight,
  BlockStructureViolation,
  NonIntegralPairing,
  MalformedSeries,
  DivergentAtOrigin,
  NoPairing,
  AmbiguousOrder,
  InconsistentSystem,
  NotNormalizable,
  UnknownShape,
  InvalidBranchData,
  GroupMismatch,
  ValueTooLarge,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail);

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace qoi
