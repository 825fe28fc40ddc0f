#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qoi/charseq.hpp"
#include "qoi/lattice.hpp"

namespace qoi {

/// Components Z_i and Z_{i,j} of the singular locus, indices 1-based.
struct SingularLocus {
  std::vector<std::size_t> codim1;
  std::vector<std::pair<std::size_t, std::size_t>> codim2;
};

/// Essential valuations w_1..w_p in three groups: codimension one, codimension
/// two, origin. In dimension two the middle group is always empty.
struct EssentialDivisors {
  std::vector<IntVector> ws;
  std::size_t s1 = 0;
  std::size_t s2 = 0;
  std::size_t s0 = 0;
  bool two_group_mode = false;
  std::size_t d = 0;
  std::size_t c = 0;
  bool normalized = false;

  std::size_t p() const noexcept { return ws.size(); }
};

struct StructureCheck {
  std::string name;
  bool passed = true;
};

struct EssentialMatrix {
  IntegerMatrix matrix;  // row i is w_i
  std::vector<StructureCheck> checks;

  bool consistent() const noexcept;
};

SingularLocus singular_locus(const SemigroupPresentation& sp);

/// Minimal interior points of a full-rank N inside the orthant, lex-sorted.
/// m_i e_i must lie in N for every i.
std::vector<IntVector> essential_over_origin(const LatticeBasis& N, std::span<const Integer> m);

EssentialDivisors essential_over_singular(const SemigroupPresentation& sp, const SingularLocus& sl);

/// singular_locus followed by essential_over_singular.
EssentialDivisors essential_divisors(const SemigroupPresentation& sp);

/// Stacks the ws and checks the expected block pattern. Throws
/// BlockStructureViolation on a failed check for normalized data.
EssentialMatrix essential_matrix(const EssentialDivisors& ed);

}  // namespace qoi
