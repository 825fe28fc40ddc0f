#pragma once

// Recovery of the normalized characteristic exponents from the short form of
// a Poincare series together with its variable grouping.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "qoi/charseq.hpp"
#include "qoi/series.hpp"

namespace qoi {

struct FactorPair {
  ExponentVector beta;   // numerator exponent
  ExponentVector alpha;  // denominator exponent with beta = n alpha
  std::int64_t n = 0;
};

struct Pairing {
  std::size_t d = 0;
  std::vector<FactorPair> pairs;          // by increasing beta
  std::vector<ExponentVector> unpaired;   // the d images of the coordinate vectors, sorted
};

/// Matches each numerator factor with the denominator factor it is a
/// multiple of. Throws NoPairing or AmbiguousOrder.
Pairing pair_factors(const CyclotomicRational& cr);

enum class RecoveryBranch { S2_GE_2, S2_EQ_0, S2_EQ_1, DIM2, DIM2_QUADRATIC_CONE };

std::string_view branch_name(RecoveryBranch branch) noexcept;

struct SolveStep {
  RationalMatrix matrix;
  RationalVector rhs;
  RationalVector solution;  // empty unless the system had a unique solution
};

struct RecoveryReport {
  std::size_t d = 0;
  std::size_t g = 0;
  std::size_t c = 0;
  std::vector<std::int64_t> ns;
  std::vector<RationalVector> gammas;
  std::vector<RationalVector> lambdas;
  RecoveryBranch branch = RecoveryBranch::DIM2;
  std::vector<SolveStep> solve_log;
};

/// Throws InconsistentSystem, NotNormalizable or UnknownShape besides the
/// pairing errors.
RecoveryReport recover(const CyclotomicRational& short_form);

}  // namespace qoi
