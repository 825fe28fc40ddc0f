#pragma once

// Monodromy zeta function of the quasi-ordinary polynomial, read off from the
// one-variable specialization of the Poincare series, and the
// equisingularity test between two Poincare series.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qoi/charseq.hpp"
#include "qoi/essential.hpp"
#include "qoi/series.hpp"

namespace qoi {

/// Generators deg(h) * (1, gamma_1, ..., gamma_g) of the value semigroup of
/// the plane branch y = sum x^{e_i}.
std::vector<std::int64_t> plane_branch_semigroup(std::span<const Rational> exponents);

/// Short-form generating series of that semigroup; 1/(1-t) for a smooth
/// branch. Throws InvalidBranchData.
CyclotomicRational plane_branch_series(std::span<const Rational> exponents);

enum class ZetaCase { A, B };

struct ZetaReport {
  ZetaCase zeta_case = ZetaCase::A;
  std::vector<std::int64_t> b;  // coordinates of w_1 + ... + w_p
  Integer n = 1;                // n_1 * ... * n_g
  std::size_t i0 = 0;           // case B only
  std::vector<std::int64_t> h_semigroup;
  CyclotomicRational zeta;
  CyclotomicRational specialized;  // short form of P(t, ..., t)
  CyclotomicRational predicted;    // the factorization through zeta, short form
  bool identity_verified = false;
};

ZetaReport zeta_mcewan_nemethi(const SemigroupPresentation& sp, const EssentialDivisors& ed);

/// k when P1 = P2 / (1 - t_{s1+s2+1} ... t_p)^k, nullopt otherwise. Series
/// with different numerators are simply unrelated; equal numerators under
/// different groupings throw GroupMismatch.
std::optional<std::size_t> equi_check(const CyclotomicRational& p1, const CyclotomicRational& p2);

}  // namespace qoi
