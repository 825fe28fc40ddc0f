#include "qoi/essential.hpp"

#include <algorithm>
#include <numeric>

#include "qoi/error.hpp"

namespace qoi {

namespace {

bool dominates(const IntVector& big, const IntVector& small) {
  for (std::size_t i = 0; i < big.size(); ++i)
    if (big[i] < small[i]) return false;
  return true;
}

// Lattice points of a full-rank echelon basis inside the box [1, m_i].
void box_points(const IntegerMatrix& B, std::span<const Integer> m, std::size_t row, IntVector& v,
                std::vector<IntVector>& out) {
  const std::size_t d = B.cols();
  if (row == d) {
    out.push_back(v);
    return;
  }
  const Integer& pivot = B(row, row);
  // v_row + c * pivot in [1, m_row]
  Integer lo = 1 - v[row], hi = m[row] - v[row];
  Integer first, last;
  mpz_cdiv_q(first.get_mpz_t(), lo.get_mpz_t(), pivot.get_mpz_t());
  mpz_fdiv_q(last.get_mpz_t(), hi.get_mpz_t(), pivot.get_mpz_t());
  for (Integer c = first; c <= last; ++c) {
    for (std::size_t i = row; i < d; ++i) v[i] += c * B(row, i);
    box_points(B, m, row + 1, v, out);
    for (std::size_t i = row; i < d; ++i) v[i] -= c * B(row, i);
  }
}

std::size_t rank_of(const IntegerMatrix& m, std::size_t r0, std::size_t r1, std::size_t c0,
                 std::size_t c1) {
  RationalMatrix sub;
  for (std::size_t r = r0; r < r1; ++r) {
    RationalVector row;
    for (std::size_t c = c0; c < c1; ++c) row.emplace_back(m(r, c));
    sub.push_back(std::move(row));
  }
  return rank(sub);
}

}  // namespace

bool EssentialMatrix::consistent() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const StructureCheck& c) { return c.passed; });
}

SingularLocus singular_locus(const SemigroupPresentation& sp) {
  SingularLocus sl;
  const auto& lambdas = sp.char_seq.lambdas;
  const std::size_t g = sp.g();
  const Rational last_step(1, static_cast<unsigned long>(sp.ns.back()));
  std::vector<bool> in_codim1(sp.c + 1, false);
  for (std::size_t i = 0; i < sp.c; ++i) {
    bool removable = lambdas[g - 1][i] == last_step;
    for (std::size_t k = 0; k + 1 < g && removable; ++k) removable = lambdas[k][i] == 0;
    if (!removable) {
      sl.codim1.push_back(i + 1);
      in_codim1[i + 1] = true;
    }
  }
  for (std::size_t i = 1; i <= sp.c; ++i)
    for (std::size_t j = i + 1; j <= sp.c; ++j)
      if (!in_codim1[i] && !in_codim1[j]) sl.codim2.emplace_back(i, j);
  return sl;
}

std::vector<IntVector> essential_over_origin(const LatticeBasis& N, std::span<const Integer> m) {
  const std::size_t d = N.ambient_dim;
  if (m.size() != d) throw Error(ErrorCode::DimensionMismatch, "bound vector length differs from d");
  if (!N.full_rank() || N.scale != 1)
    throw Error(ErrorCode::DimensionMismatch, "origin search needs a full-rank sublattice of Z^d");

  std::vector<IntVector> points;
  IntVector v(d, Integer(0));
  box_points(N.basis, m, 0, v, points);

  auto sum = [](const IntVector& x) { return std::accumulate(x.begin(), x.end(), Integer(0)); };
  std::stable_sort(points.begin(), points.end(),
                   [&](const IntVector& a, const IntVector& b) { return sum(a) < sum(b); });
  std::vector<IntVector> minimal;
  for (const auto& p : points)
    if (std::none_of(minimal.begin(), minimal.end(),
                     [&](const IntVector& q) { return dominates(p, q); }))
      minimal.push_back(p);
  std::sort(minimal.begin(), minimal.end());
  return minimal;
}

EssentialDivisors essential_over_singular(const SemigroupPresentation& sp, const SingularLocus& sl) {
  const std::size_t d = sp.d();
  EssentialDivisors ed;
  ed.d = d;
  ed.c = sp.c;
  ed.normalized = sp.normalized;
  ed.two_group_mode = d == 2;

  for (std::size_t i : sl.codim1) {
    IntVector u(d, Integer(0));
    u[i - 1] = sp.m[i - 1];
    ed.ws.push_back(std::move(u));
  }
  ed.s1 = sl.codim1.size();

  if (!ed.two_group_mode) {
    const std::int64_t ng = sp.ns.back();
    for (const auto& [i, j] : sl.codim2)
      for (std::int64_t k = 1; k < ng; ++k) {
        IntVector w(d, Integer(0));
        w[i - 1] = static_cast<long>(k);
        w[j - 1] = static_cast<long>(ng - k);
        ed.ws.push_back(std::move(w));
      }
    ed.s2 = ed.ws.size() - ed.s1;
  }

  auto origin = essential_over_origin(sp.lattice_N, sp.m);
  ed.s0 = origin.size();
  for (auto& w : origin) ed.ws.push_back(std::move(w));
  return ed;
}

EssentialDivisors essential_divisors(const SemigroupPresentation& sp) {
  return essential_over_singular(sp, singular_locus(sp));
}

EssentialMatrix essential_matrix(const EssentialDivisors& ed) {
  const std::size_t d = ed.d, p = ed.p(), c = ed.c, s1 = ed.s1, s2 = ed.s2;
  EssentialMatrix em;
  em.matrix = IntegerMatrix::from_rows(ed.ws, d);
  const IntegerMatrix& M = em.matrix;
  auto check = [&](std::string name, bool ok) { em.checks.push_back({std::move(name), ok}); };

  if (d == 2) {
    // Surface case: only the quadratic cone has a single valuation.
    if (p >= 2) check("rank 2", rank_of(M, 0, p, 0, 2) == 2);
  } else {
    bool diag = true;
    for (std::size_t r = 0; r < s1; ++r)
      for (std::size_t k = 0; k < s1; ++k)
        if ((r == k) != (M(r, k) != 0)) diag = false;
    check("codimension one block diagonal and nonsingular", diag);

    bool zero = true;
    for (std::size_t r = s1; r < s1 + s2; ++r) {
      for (std::size_t k = 0; k < s1; ++k) zero = zero && M(r, k) == 0;
      for (std::size_t k = c; k < d; ++k) zero = zero && M(r, k) == 0;
    }
    check("codimension two rows vanish outside their block", zero);

    bool ones = true;
    for (std::size_t r = s1 + s2; r < p; ++r)
      for (std::size_t k = c; k < d; ++k) ones = ones && M(r, k) == 1;
    check("origin rows are one on the free coordinates", ones);

    if (s2 != 1) {
      if (c - s1 >= 2) check("codimension two block rank", rank_of(M, s1, s1 + s2, s1, c) == c - s1);
      check("first c columns have full rank", rank_of(M, 0, p, 0, c) == c);
    }
  }

  if (ed.normalized)
    for (const auto& ch : em.checks)
      if (!ch.passed) throw Error(ErrorCode::BlockStructureViolation, ch.name);
  return em;
}

}  // namespace qoi
