#include "qoi/lattice.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "qoi/error.hpp"

namespace qoi {

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer trunc_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

void axpy_row(std::span<Integer> target, const Integer& factor, std::span<const Integer> source) {
  for (std::size_t k = 0; k < target.size(); ++k) target[k] += factor * source[k];
}

bool is_zero(std::span<const Integer> v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

std::size_t pivot_column(std::span<const Integer> row) {
  for (std::size_t c = 0; c < row.size(); ++c)
    if (row[c] != 0) return c;
  return row.size();
}

// Whether D*v lies in the row span of an HNF matrix; v is modified.
bool reduce_against(std::vector<Integer>& residual, const IntegerMatrix& hnf) {
  for (std::size_t i = 0; i < hnf.rows(); ++i) {
    std::span<const Integer> row = hnf.row(i);
    std::size_t pc = pivot_column(row);
    if (!mpz_divisible_p(residual[pc].get_mpz_t(), row[pc].get_mpz_t())) return false;
    Integer q = residual[pc] / row[pc];
    if (q != 0) axpy_row(residual, -q, row);
  }
  return is_zero(residual);
}

}  // namespace

Rational make_rational(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

RationalVector to_rational(std::span<const Integer> v) {
  return RationalVector(v.begin(), v.end());
}

Rational dot(std::span<const Integer> v, std::span<const Rational> x) {
  if (v.size() != x.size())
    throw Error(ErrorCode::DimensionMismatch,
                "pairing of lengths " + std::to_string(v.size()) + " and " +
                    std::to_string(x.size()));
  Rational sum = 0;
  for (std::size_t i = 0; i < v.size(); ++i) sum += Rational(v[i]) * x[i];
  return sum;
}

Integer common_denominator(std::span<const Rational> x) {
  Integer d = 1;
  for (const auto& q : x) d = lcm(d, q.get_den());
  return d;
}

std::int64_t to_int64(const Integer& x) {
  if (!x.fits_slong_p())
    throw Error(ErrorCode::ValueTooLarge, x.get_str() + " does not fit a machine integer");
  return static_cast<std::int64_t>(x.get_si());
}

// ---------------------------------------------------------------------------

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntegerMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols)
      throw Error(ErrorCode::DimensionMismatch,
                  "row " + std::to_string(r) + " has length " + std::to_string(rows[r].size()) +
                      ", expected " + std::to_string(cols));
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

IntVector IntegerMatrix::row_vector(std::size_t r) const {
  auto s = row(r);
  return IntVector(s.begin(), s.end());
}

std::vector<IntVector> IntegerMatrix::to_rows() const {
  std::vector<IntVector> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row_vector(r));
  return out;
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& rhs) const {
  if (cols_ != rhs.rows_)
    throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  IntegerMatrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += a * rhs(k, c);
    }
  return out;
}

// ---------------------------------------------------------------------------

bool LatticeBasis::contains(std::span<const Rational> v) const {
  if (v.size() != ambient_dim)
    throw Error(ErrorCode::DimensionMismatch,
                "vector of length " + std::to_string(v.size()) + " against lattice in dimension " +
                    std::to_string(ambient_dim));
  std::vector<Integer> residual(ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    Rational scaled = v[i] * Rational(scale);
    if (scaled.get_den() != 1) return false;
    residual[i] = scaled.get_num();
  }
  return reduce_against(residual, basis);
}

bool LatticeBasis::contains(std::span<const Integer> v) const {
  if (v.size() != ambient_dim)
    throw Error(ErrorCode::DimensionMismatch,
                "vector of length " + std::to_string(v.size()) + " against lattice in dimension " +
                    std::to_string(ambient_dim));
  std::vector<Integer> residual(v.begin(), v.end());
  for (auto& x : residual) x *= scale;
  return reduce_against(residual, basis);
}

std::vector<RationalVector> LatticeBasis::generators() const {
  std::vector<RationalVector> out;
  for (std::size_t r = 0; r < basis.rows(); ++r) {
    RationalVector g;
    for (const auto& x : basis.row(r)) g.push_back(make_rational(x, scale));
    out.push_back(std::move(g));
  }
  return out;
}

IntegerMatrix hermite_rows(IntegerMatrix m) {
  const std::size_t nrows = m.rows();
  const std::size_t ncols = m.cols();
  std::size_t r = 0;
  for (std::size_t col = 0; col < ncols && r < nrows; ++col) {
    // Euclid on column `col` among rows r..end until a single nonzero remains.
    while (true) {
      std::size_t best = nrows;
      for (std::size_t i = r; i < nrows; ++i) {
        if (m(i, col) == 0) continue;
        if (best == nrows || abs(m(i, col)) < abs(m(best, col))) best = i;
      }
      if (best == nrows) break;
      if (best != r)
        for (std::size_t c = 0; c < ncols; ++c) std::swap(m(best, c), m(r, c));
      bool others = false;
      for (std::size_t i = r + 1; i < nrows; ++i) {
        if (m(i, col) == 0) continue;
        Integer q = floor_div(m(i, col), m(r, col));
        axpy_row(m.row(i), -q, m.row(r));
        if (m(i, col) != 0) others = true;
      }
      if (!others) break;
    }
    if (m(r, col) == 0) continue;
    if (m(r, col) < 0)
      for (auto& x : m.row(r)) x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = floor_div(m(i, col), m(r, col));
      if (q != 0) axpy_row(m.row(i), -q, m.row(r));
    }
    ++r;
  }
  IntegerMatrix out(r, ncols);
  for (std::size_t i = 0; i < r; ++i) std::copy(m.row(i).begin(), m.row(i).end(), out.row(i).begin());
  return out;
}

LatticeBasis hermite_normal_form(const IntegerMatrix& generators) {
  LatticeBasis lattice;
  lattice.ambient_dim = generators.cols();
  lattice.basis = hermite_rows(generators);
  lattice.scale = 1;
  lattice.mode = LatticeMode::Sublattice;
  return lattice;
}

LatticeBasis lattice_from_generators(std::span<const RationalVector> generators, std::size_t d,
                                     bool include_integers) {
  Integer scale = 1;
  for (const auto& g : generators) {
    if (g.size() != d)
      throw Error(ErrorCode::DimensionMismatch,
                  "generator of length " + std::to_string(g.size()) + " in dimension " +
                      std::to_string(d));
    scale = lcm(scale, common_denominator(g));
  }
  std::vector<IntVector> rows;
  if (include_integers)
    for (std::size_t i = 0; i < d; ++i) {
      IntVector e(d, Integer(0));
      e[i] = scale;
      rows.push_back(std::move(e));
    }
  for (const auto& g : generators) {
    IntVector row;
    row.reserve(d);
    for (const auto& x : g) {
      Rational scaled = x * Rational(scale);
      row.push_back(scaled.get_num());
    }
    rows.push_back(std::move(row));
  }
  LatticeBasis lattice;
  lattice.ambient_dim = d;
  lattice.basis = hermite_rows(IntegerMatrix::from_rows(rows, d));
  lattice.scale = scale;
  lattice.mode = include_integers ? LatticeMode::Overlattice : LatticeMode::Sublattice;
  return lattice;
}

Integer lattice_index(const LatticeBasis& sub, const LatticeBasis& sup) {
  if (sub.ambient_dim != sup.ambient_dim)
    throw Error(ErrorCode::DimensionMismatch, "lattices live in different dimensions");
  if (!sub.full_rank() || !sup.full_rank())
    throw Error(ErrorCode::DimensionMismatch, "lattice index needs full-rank lattices");
  for (const auto& g : sub.generators())
    if (!sup.contains(std::span<const Rational>(g))) {
      std::string text;
      for (const auto& x : g) text += (text.empty() ? "" : ",") + x.get_str();
      throw Error(ErrorCode::NotASublattice, "generator (" + text + ") is not in the larger lattice");
    }
  const auto d = static_cast<unsigned long>(sub.ambient_dim);
  Integer sub_scale_pow, sup_scale_pow;
  mpz_pow_ui(sub_scale_pow.get_mpz_t(), sub.scale.get_mpz_t(), d);
  mpz_pow_ui(sup_scale_pow.get_mpz_t(), sup.scale.get_mpz_t(), d);
  Integer num = abs(determinant(sub.basis)) * sup_scale_pow;
  Integer den = abs(determinant(sup.basis)) * sub_scale_pow;
  return num / den;
}

LatticeBasis dual_sublattice(std::span<const RationalVector> gammas, std::size_t d) {
  Integer scale = 1;
  for (const auto& g : gammas) {
    if (g.size() != d)
      throw Error(ErrorCode::DimensionMismatch,
                  "exponent of length " + std::to_string(g.size()) + " in dimension " +
                      std::to_string(d));
    scale = lcm(scale, common_denominator(g));
  }
  if (gammas.empty() || scale == 1) return hermite_normal_form(IntegerMatrix::identity(d));

  // A v = 0 (mod D) with A = D * gammas.
  IntegerMatrix a(gammas.size(), d);
  for (std::size_t j = 0; j < gammas.size(); ++j)
    for (std::size_t i = 0; i < d; ++i) a(j, i) = Rational(gammas[j][i] * scale).get_num();

  // With U A V = S, substitute v = V y; the system decouples into
  // s_i y_i = 0 (mod D).
  SmithForm snf = smith_normal_form(a);
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < d; ++i) {
    Integer factor = 1;
    if (i < snf.rank) factor = scale / gcd(scale, snf.diagonal(i, i));
    IntVector column(d);
    for (std::size_t k = 0; k < d; ++k) column[k] = snf.right(k, i) * factor;
    rows.push_back(std::move(column));
  }
  return hermite_normal_form(IntegerMatrix::from_rows(rows, d));
}

bool member(std::span<const Integer> v, const LatticeBasis& lattice) {
  return lattice.contains(v);
}

Integer determinant(const IntegerMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntegerMatrix a = m;
  Integer sign = 1;
  Integer previous = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(swap_row, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / previous;
    previous = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

SmithForm smith_normal_form(const IntegerMatrix& m) {
  const std::size_t nrows = m.rows();
  const std::size_t ncols = m.cols();
  SmithForm out{m, IntegerMatrix::identity(nrows), IntegerMatrix::identity(ncols), 0};
  IntegerMatrix& a = out.diagonal;
  IntegerMatrix& u = out.left;
  IntegerMatrix& v = out.right;

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < ncols; ++c) std::swap(a(i, c), a(j, c));
    for (std::size_t c = 0; c < nrows; ++c) std::swap(u(i, c), u(j, c));
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < nrows; ++r) std::swap(a(r, i), a(r, j));
    for (std::size_t r = 0; r < ncols; ++r) std::swap(v(r, i), v(r, j));
  };
  auto add_row = [&](std::size_t target, std::size_t source, const Integer& f) {
    axpy_row(a.row(target), f, a.row(source));
    axpy_row(u.row(target), f, u.row(source));
  };
  auto add_col = [&](std::size_t target, std::size_t source, const Integer& f) {
    for (std::size_t r = 0; r < nrows; ++r) a(r, target) += f * a(r, source);
    for (std::size_t r = 0; r < ncols; ++r) v(r, target) += f * v(r, source);
  };

  std::size_t t = 0;
  for (; t < std::min(nrows, ncols); ++t) {
    std::size_t bi = nrows, bj = ncols;
    for (std::size_t i = t; i < nrows; ++i)
      for (std::size_t j = t; j < ncols; ++j)
        if (a(i, j) != 0 && (bi == nrows || abs(a(i, j)) < abs(a(bi, bj)))) {
          bi = i;
          bj = j;
        }
    if (bi == nrows) break;
    if (bi != t) swap_rows(bi, t);
    if (bj != t) swap_cols(bj, t);

    while (true) {
      bool changed = false;
      for (std::size_t i = t + 1; i < nrows; ++i) {
        if (a(i, t) == 0) continue;
        add_row(i, t, -trunc_div(a(i, t), a(t, t)));
        if (a(i, t) != 0) {
          swap_rows(i, t);
          changed = true;
        }
      }
      for (std::size_t j = t + 1; j < ncols; ++j) {
        if (a(t, j) == 0) continue;
        add_col(j, t, -trunc_div(a(t, j), a(t, t)));
        if (a(t, j) != 0) {
          swap_cols(j, t);
          changed = true;
        }
      }
      if (changed) continue;
      bool fixed = false;
      for (std::size_t i = t + 1; i < nrows && !fixed; ++i)
        for (std::size_t j = t + 1; j < ncols && !fixed; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            add_row(t, i, 1);
            fixed = true;
          }
      if (!fixed) break;
    }
    if (a(t, t) < 0) {
      for (auto& x : a.row(t)) x = -x;
      for (auto& x : u.row(t)) x = -x;
    }
  }
  out.rank = t;
  return out;
}

// ---------------------------------------------------------------------------

std::size_t rank(RationalMatrix m) {
  std::size_t r = 0;
  const std::size_t ncols = m.empty() ? 0 : m.front().size();
  for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      Rational f = m[i][c] / m[r][c];
      for (std::size_t k = c; k < ncols; ++k) m[i][k] -= f * m[r][k];
    }
    ++r;
  }
  return r;
}

SolveResult solve_exact(const RationalMatrix& a, const RationalVector& b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::DimensionMismatch, "right-hand side length does not match the matrix");
  const std::size_t nrows = a.size();
  const std::size_t ncols = a.empty() ? 0 : a.front().size();
  RationalMatrix aug(nrows);
  for (std::size_t i = 0; i < nrows; ++i) {
    if (a[i].size() != ncols) throw Error(ErrorCode::DimensionMismatch, "ragged matrix");
    aug[i] = a[i];
    aug[i].push_back(b[i]);
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
    std::size_t p = r;
    while (p < nrows && aug[p][c] == 0) ++p;
    if (p == nrows) continue;
    std::swap(aug[p], aug[r]);
    Rational inv = 1 / aug[r][c];
    for (auto& x : aug[r]) x *= inv;
    for (std::size_t i = 0; i < nrows; ++i) {
      if (i == r || aug[i][c] == 0) continue;
      Rational f = aug[i][c];
      for (std::size_t k = c; k <= ncols; ++k) aug[i][k] -= f * aug[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < nrows; ++i)
    if (aug[i][ncols] != 0) return {SolveStatus::Inconsistent, {}};
  if (pivots.size() < ncols) return {SolveStatus::Underdetermined, {}};
  RationalVector x(ncols);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][ncols];
  return {SolveStatus::Unique, std::move(x)};
}

}  // namespace qoi
