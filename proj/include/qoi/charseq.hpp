#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qoi/lattice.hpp"

namespace qoi {

/// Characteristic exponents lambda_1 < ... < lambda_g of a quasi-ordinary
/// projection, each a vector in Q^d.
struct CharacteristicSequence {
  std::size_t d = 0;
  std::vector<RationalVector> lambdas;

  std::size_t g() const noexcept { return lambdas.size(); }
};

/// Validated characteristic data with everything derived from it.
struct SemigroupPresentation {
  CharacteristicSequence char_seq;
  std::vector<RationalVector> gammas;  // semigroup generators gamma_1..gamma_g
  std::vector<std::int64_t> ns;        // characteristic integers n_j = [M_j : M_{j-1}]
  std::size_t c = 0;                   // equisingular dimension
  Integer degree = 1;                  // n_1 * ... * n_g
  std::vector<LatticeBasis> lattices;  // M_0 = Z^d, M_1, ..., M_g = M
  LatticeBasis lattice_N;              // dual of M inside Z^d
  IntVector m;                         // u_i = m_i e_i is primitive in N
  bool normalized = false;

  std::size_t d() const noexcept { return char_seq.d; }
  std::size_t g() const noexcept { return char_seq.g(); }
};

/// An element alpha + sum l_i gamma_i of the semigroup with 0 <= l_i < n_i.
struct SemigroupElement {
  IntVector alpha;
  std::vector<std::int64_t> l;
  RationalVector value;
};

/// Componentwise <= with at least one strict coordinate.
bool strictly_less(std::span<const Rational> a, std::span<const Rational> b);

/// Whether the coordinate columns (lambda_1^i, ..., lambda_g^i) are
/// lexicographically non-increasing in i.
bool columns_lex_sorted(const std::vector<RationalVector>& lambdas, std::size_t d);

/// Permutes coordinates so that the columns become lexicographically
/// non-increasing. The same permutation is applied to every vector.
std::vector<RationalVector> sort_columns_lex(std::vector<RationalVector> lambdas);

/// gamma_1 = lambda_1, gamma_{j+1} = n_j gamma_j + lambda_{j+1} - lambda_j.
std::vector<RationalVector> gammas_from_lambdas(const std::vector<RationalVector>& lambdas,
                                                std::span<const std::int64_t> ns);
/// Inverse of gammas_from_lambdas.
std::vector<RationalVector> lambdas_from_gammas(const std::vector<RationalVector>& gammas,
                                                std::span<const std::int64_t> ns);

/// Checks the characteristic sequence and derives the presentation. Throws
/// BadDimension, NegativeExponent, NotStrictlyIncreasing, LexOrderViolated or
/// RedundantExponent. Non-normalized input is accepted and flagged.
SemigroupPresentation validate(const CharacteristicSequence& cs);

/// The d = 1 case (a plane branch given by its Puiseux exponents in x).
SemigroupPresentation validate_plane_branch(std::span<const Rational> exponents);

/// Unique expansion gamma = alpha + sum l_i gamma_i, or nullopt when gamma is
/// not in the semigroup.
std::optional<SemigroupElement> canonical_form(std::span<const Rational> gamma,
                                               const SemigroupPresentation& sp);

/// All semigroup elements with <w_k, gamma> <= bounds[k] for every k, sorted
/// lexicographically by (alpha, l). Needs one weight that is strictly
/// positive on every coordinate; throws NoInteriorWeight otherwise.
std::vector<SemigroupElement> enumerate_semigroup(const SemigroupPresentation& sp,
                                                  const std::vector<IntVector>& weights,
                                                  std::span<const std::int64_t> bounds);

}  // namespace qoi
