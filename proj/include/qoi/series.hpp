#pragma once

// Poincare series as quotients of cyclotomic binomials (1 - t^a), their
// truncated expansions, and the brute-force fiber counts they must match.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "qoi/charseq.hpp"
#include "qoi/essential.hpp"
#include "qoi/lattice.hpp"

namespace qoi {

using ExponentVector = std::vector<std::int64_t>;

/// Sizes of the codimension one, codimension two and origin variable groups.
struct VariableGroups {
  std::size_t s1 = 0;
  std::size_t s2 = 0;
  std::size_t s0 = 0;
  bool two_group_mode = false;

  std::size_t size() const noexcept { return s1 + s2 + s0; }
  bool operator==(const VariableGroups&) const = default;
};

VariableGroups groups_of(const EssentialDivisors& ed);

/// prod (1 - t^b) over the numerator divided by prod (1 - t^a) over the
/// denominator. Both multisets are kept sorted.
struct CyclotomicRational {
  std::size_t vars = 0;
  VariableGroups groups;
  std::vector<ExponentVector> numerator;
  std::vector<ExponentVector> denominator;

  void sort();
  bool operator==(const CyclotomicRational&) const = default;
};

/// 1 on the origin-group variables, 0 elsewhere.
ExponentVector indicator(const VariableGroups& groups);

struct TruncatedSeries {
  std::size_t vars = 0;
  ExponentVector bound;
  std::map<ExponentVector, Integer> coeffs;  // nonzero coefficients only

  Integer coefficient(const ExponentVector& a) const;
  bool operator==(const TruncatedSeries&) const = default;
};

/// (<w_1, gamma>, ..., <w_p, gamma>); throws NonIntegralPairing.
ExponentVector monomial_map(std::span<const Rational> gamma, const std::vector<IntVector>& ws);

/// The uncancelled product for an arbitrary list of weights.
CyclotomicRational poincare_series(const SemigroupPresentation& sp,
                                   const std::vector<IntVector>& weights, VariableGroups groups);
CyclotomicRational poincare_forward(const SemigroupPresentation& sp, const EssentialDivisors& ed);

/// Cancels common factors between numerator and denominator.
CyclotomicRational short_form(CyclotomicRational cr);

/// Power series coefficients inside the box prod [0, bound_k]. Throws
/// DivergentAtOrigin for a zero denominator vector and MalformedSeries for
/// negative exponents or a wrong bound length.
TruncatedSeries expand(const CyclotomicRational& cr, std::span<const std::int64_t> bound);

/// Number of semigroup elements in each fiber of the monomial map.
TruncatedSeries count_fibers(const SemigroupPresentation& sp, const EssentialDivisors& ed,
                             std::span<const std::int64_t> bound);

/// Same count for the semigroup generated by arbitrary nonnegative rational
/// generators, found by breadth-first search.
TruncatedSeries toric_fibers(const std::vector<RationalVector>& generators,
                             const std::vector<IntVector>& weights,
                             std::span<const std::int64_t> bound);

/// Substitutes t_k = t for every k.
CyclotomicRational specialize_sum(const CyclotomicRational& cr);

/// One-variable substitution t -> t^k; the exponents must stay integral.
CyclotomicRational substitute_power(const CyclotomicRational& cr, const Rational& k);

CyclotomicRational multiply(const CyclotomicRational& a, const CyclotomicRational& b);
CyclotomicRational divide(const CyclotomicRational& a, const CyclotomicRational& b);

}  // namespace qoi
