#include "qoi/zeta.hpp"

#include <algorithm>
#include <string>

#include "qoi/error.hpp"

namespace qoi {

namespace {

SemigroupPresentation branch(std::span<const Rational> exponents) {
  try {
    return validate_plane_branch(exponents);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidBranchData, std::string(e.name()) + ": " + e.detail());
  }
}

CyclotomicRational one_variable() {
  CyclotomicRational cr;
  cr.vars = 1;
  cr.groups = {0, 0, 1, false};
  return cr;
}

}  // namespace

std::vector<std::int64_t> plane_branch_semigroup(std::span<const Rational> exponents) {
  if (exponents.empty()) return {1};
  SemigroupPresentation sp = branch(exponents);
  std::vector<std::int64_t> gens{to_int64(sp.degree)};
  for (const auto& gamma : sp.gammas) {
    Rational v = gamma[0] * sp.degree;
    gens.push_back(to_int64(v.get_num()));
  }
  return gens;
}

CyclotomicRational plane_branch_series(std::span<const Rational> exponents) {
  CyclotomicRational cr = one_variable();
  if (exponents.empty()) {
    cr.denominator.push_back({1});
    return cr;
  }
  SemigroupPresentation sp = branch(exponents);
  std::vector<std::int64_t> gens = plane_branch_semigroup(exponents);
  cr.denominator.push_back({gens[0]});
  for (std::size_t i = 0; i < sp.g(); ++i) {
    cr.numerator.push_back({sp.ns[i] * gens[i + 1]});
    cr.denominator.push_back({gens[i + 1]});
  }
  return short_form(cr);
}

ZetaReport zeta_mcewan_nemethi(const SemigroupPresentation& sp, const EssentialDivisors& ed) {
  const std::size_t d = sp.d();
  if (d < 2) throw Error(ErrorCode::BadDimension, "the zeta comparison needs d >= 2");
  ZetaReport report;
  report.n = sp.degree;
  report.b.assign(d, 0);
  IntVector w(d, Integer(0));
  for (const auto& wk : ed.ws)
    for (std::size_t i = 0; i < d; ++i) w[i] += wk[i];
  for (std::size_t i = 0; i < d; ++i) report.b[i] = to_int64(w[i]);

  const auto& lambdas = sp.char_seq.lambdas;
  if (lambdas[0][1] != 0) {
    report.zeta_case = ZetaCase::A;
    report.zeta = one_variable();
    report.zeta.numerator.push_back({to_int64(sp.degree)});
  } else {
    report.zeta_case = ZetaCase::B;
    while (report.i0 < sp.g() && lambdas[report.i0][1] == 0) ++report.i0;
    RationalVector h;
    Integer deg_h = 1;
    for (std::size_t i = 0; i < report.i0; ++i) {
      h.push_back(lambdas[i][0]);
      deg_h *= sp.ns[i];
    }
    report.h_semigroup = plane_branch_semigroup(h);
    report.zeta = substitute_power(plane_branch_series(h), make_rational(sp.degree, deg_h));
  }

  // P(t, ..., t) = zeta(f)(t^{b_1/n})^{+-1} times the factors of gamma_j, j > i0,
  // and of e_2, ..., e_d.
  CyclotomicRational rest = one_variable();
  for (std::size_t j = report.i0; j < sp.g(); ++j) {
    RationalVector scaled = sp.gammas[j];
    for (auto& x : scaled) x *= sp.ns[j];
    rest.numerator.push_back({to_int64(dot(w, scaled).get_num())});
    rest.denominator.push_back({to_int64(dot(w, sp.gammas[j]).get_num())});
  }
  for (std::size_t i = 1; i < d; ++i) rest.denominator.push_back({report.b[i]});
  rest.sort();

  CyclotomicRational zeta_at = substitute_power(report.zeta, make_rational(w[0], sp.degree));
  CyclotomicRational predicted = report.zeta_case == ZetaCase::A ? divide(rest, zeta_at)
                                                                  : multiply(zeta_at, rest);
  report.predicted = short_form(predicted);
  report.specialized = short_form(specialize_sum(poincare_forward(sp, ed)));
  report.identity_verified = report.predicted == report.specialized;
  return report;
}

std::optional<std::size_t> equi_check(const CyclotomicRational& p1, const CyclotomicRational& p2) {
  CyclotomicRational a = short_form(p1), b = short_form(p2);
  if (a.numerator != b.numerator) return std::nullopt;
  if (a.vars != b.vars || a.groups.s1 != b.groups.s1 || a.groups.s2 != b.groups.s2 ||
      a.groups.s0 != b.groups.s0)
    throw Error(ErrorCode::GroupMismatch, "equal numerators but the variable groups differ");
  if (!std::includes(a.denominator.begin(), a.denominator.end(), b.denominator.begin(),
                     b.denominator.end()))
    return std::nullopt;
  std::vector<ExponentVector> extra;
  std::set_difference(a.denominator.begin(), a.denominator.end(), b.denominator.begin(),
                      b.denominator.end(), std::back_inserter(extra));
  const ExponentVector origin = indicator(a.groups);
  if (!std::all_of(extra.begin(), extra.end(), [&](const ExponentVector& e) { return e == origin; }))
    return std::nullopt;
  return extra.size();
}

}  // namespace qoi
