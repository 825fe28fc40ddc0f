#pragma once

// Exact integer and rational linear algebra: Hermite and Smith normal forms,
// lattice membership, lattice indices and the dual sublattice
// N = { v in Z^d : <v, gamma_j> in Z }.
//
// Everything is arbitrary precision (GMP). Lattices are stored as a canonical
// row-style HNF basis B together with a positive scale D, representing the
// lattice rowspan_Z(B) / D inside Q^d.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace qoi {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

/// num/den in lowest terms with a positive denominator.
Rational make_rational(const Integer& num, const Integer& den);
RationalVector to_rational(std::span<const Integer> v);
Rational dot(std::span<const Integer> v, std::span<const Rational> x);
/// Least common multiple of the denominators; 1 for an empty input.
Integer common_denominator(std::span<const Rational> x);
/// Narrowing for loop bounds and exponents; throws ValueTooLarge.
std::int64_t to_int64(const Integer& x);

class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols);
  static IntegerMatrix identity(std::size_t n);
  static IntegerMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Integer> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Integer> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  IntVector row_vector(std::size_t r) const;
  std::vector<IntVector> to_rows() const;

  IntegerMatrix transpose() const;
  IntegerMatrix operator*(const IntegerMatrix& rhs) const;
  bool operator==(const IntegerMatrix& rhs) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

enum class LatticeMode {
  Sublattice,   // contained in Z^d (e.g. N)
  Overlattice,  // contains Z^d (e.g. the M_j)
};

struct LatticeBasis {
  std::size_t ambient_dim = 0;
  IntegerMatrix basis;  // canonical HNF rows, linearly independent
  Integer scale = 1;    // lattice = rowspan(basis) / scale
  LatticeMode mode = LatticeMode::Sublattice;

  std::size_t rank() const noexcept { return basis.rows(); }
  bool full_rank() const noexcept { return rank() == ambient_dim; }
  bool contains(std::span<const Rational> v) const;
  bool contains(std::span<const Integer> v) const;
  /// Basis rows divided by the scale.
  std::vector<RationalVector> generators() const;
};

/// Canonical row HNF: echelon rows, positive pivots, entries above each pivot
/// reduced into [0, pivot). Zero rows are dropped.
IntegerMatrix hermite_rows(IntegerMatrix m);

/// HNF basis of the integer row span of `generators` (a sublattice of Z^d).
LatticeBasis hermite_normal_form(const IntegerMatrix& generators);

/// Lattice spanned by rational generators, optionally together with Z^d.
LatticeBasis lattice_from_generators(std::span<const RationalVector> generators,
                                     std::size_t d, bool include_integers);

/// [sup : sub]. Throws NotASublattice or DimensionMismatch.
Integer lattice_index(const LatticeBasis& sub, const LatticeBasis& sup);

/// N = { v in Z^d : <v, gamma> in Z for every gamma }, solved with a Smith
/// normal form of the cleared congruence system.
LatticeBasis dual_sublattice(std::span<const RationalVector> gammas, std::size_t d);

/// Throws DimensionMismatch when the lengths differ.
bool member(std::span<const Integer> v, const LatticeBasis& lattice);

/// Bareiss elimination; the matrix must be square.
Integer determinant(const IntegerMatrix& m);

struct SmithForm {
  IntegerMatrix diagonal;  // left * input * right
  IntegerMatrix left;
  IntegerMatrix right;
  std::size_t rank = 0;
};

/// Smith normal form with unimodular transforms; diagonal entries positive and
/// each dividing the next.
SmithForm smith_normal_form(const IntegerMatrix& m);

// Dense rational linear algebra on row-major matrices.
using RationalMatrix = std::vector<RationalVector>;

std::size_t rank(RationalMatrix m);

enum class SolveStatus { Unique, Inconsistent, Underdetermined };

struct SolveResult {
  SolveStatus status = SolveStatus::Inconsistent;
  RationalVector solution;  // set only when Unique
};

/// Solves a x = b exactly for a p x c matrix; overdetermined systems are
/// accepted and every row is checked.
SolveResult solve_exact(const RationalMatrix& a, const RationalVector& b);

}  // namespace qoi
