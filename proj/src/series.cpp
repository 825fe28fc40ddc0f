#include "qoi/series.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>

#include "qoi/error.hpp"

namespace qoi {

namespace {

std::string show(const ExponentVector& a) {
  std::string out = "(";
  for (std::size_t i = 0; i < a.size(); ++i) out += (i ? "," : "") + std::to_string(a[i]);
  return out + ")";
}

bool is_zero(const ExponentVector& a) {
  return std::all_of(a.begin(), a.end(), [](std::int64_t x) { return x == 0; });
}

struct Box {
  ExponentVector bound;
  std::vector<std::size_t> stride;
  std::size_t volume = 1;

  explicit Box(std::span<const std::int64_t> b) : bound(b.begin(), b.end()), stride(b.size()) {
    for (std::size_t k = b.size(); k-- > 0;) {
      if (b[k] < 0) throw Error(ErrorCode::MalformedSeries, "negative truncation bound");
      stride[k] = volume;
      volume *= static_cast<std::size_t>(b[k] + 1);
    }
  }

  bool inside(const ExponentVector& a) const {
    for (std::size_t k = 0; k < a.size(); ++k)
      if (a[k] < 0 || a[k] > bound[k]) return false;
    return true;
  }

  std::size_t index(const ExponentVector& a) const {
    std::size_t i = 0;
    for (std::size_t k = 0; k < a.size(); ++k) i += static_cast<std::size_t>(a[k]) * stride[k];
    return i;
  }

  ExponentVector point(std::size_t i) const {
    ExponentVector a(bound.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      a[k] = static_cast<std::int64_t>(i / stride[k]);
      i %= stride[k];
    }
    return a;
  }
};

TruncatedSeries collect(const Box& box, const std::vector<Integer>& dense) {
  TruncatedSeries ts;
  ts.vars = box.bound.size();
  ts.bound = box.bound;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (dense[i] != 0) ts.coeffs.emplace(box.point(i), dense[i]);
  return ts;
}

}  // namespace

VariableGroups groups_of(const EssentialDivisors& ed) {
  return {ed.s1, ed.s2, ed.s0, ed.two_group_mode};
}

void CyclotomicRational::sort() {
  std::sort(numerator.begin(), numerator.end());
  std::sort(denominator.begin(), denominator.end());
}

ExponentVector indicator(const VariableGroups& groups) {
  ExponentVector v(groups.size(), 0);
  for (std::size_t k = groups.s1 + groups.s2; k < v.size(); ++k) v[k] = 1;
  return v;
}

Integer TruncatedSeries::coefficient(const ExponentVector& a) const {
  auto it = coeffs.find(a);
  return it == coeffs.end() ? Integer(0) : it->second;
}

ExponentVector monomial_map(std::span<const Rational> gamma, const std::vector<IntVector>& ws) {
  ExponentVector out;
  out.reserve(ws.size());
  for (const auto& w : ws) {
    Rational v = dot(w, gamma);
    if (v.get_den() != 1)
      throw Error(ErrorCode::NonIntegralPairing, "pairing " + v.get_str() + " is not an integer");
    out.push_back(to_int64(v.get_num()));
  }
  return out;
}

CyclotomicRational poincare_series(const SemigroupPresentation& sp,
                                   const std::vector<IntVector>& weights, VariableGroups groups) {
  CyclotomicRational cr;
  cr.vars = weights.size();
  cr.groups = groups;
  const std::size_t d = sp.d();
  for (std::size_t i = 0; i < sp.g(); ++i) {
    RationalVector scaled = sp.gammas[i];
    for (auto& x : scaled) x *= sp.ns[i];
    cr.numerator.push_back(monomial_map(scaled, weights));
  }
  for (std::size_t j = 0; j < d; ++j) {
    RationalVector e(d, Rational(0));
    e[j] = 1;
    cr.denominator.push_back(monomial_map(e, weights));
  }
  for (const auto& gamma : sp.gammas) cr.denominator.push_back(monomial_map(gamma, weights));
  cr.sort();
  return cr;
}

CyclotomicRational poincare_forward(const SemigroupPresentation& sp, const EssentialDivisors& ed) {
  return poincare_series(sp, ed.ws, groups_of(ed));
}

CyclotomicRational short_form(CyclotomicRational cr) {
  cr.sort();
  std::vector<ExponentVector> num, den;
  std::set_difference(cr.numerator.begin(), cr.numerator.end(), cr.denominator.begin(),
                      cr.denominator.end(), std::back_inserter(num));
  std::set_difference(cr.denominator.begin(), cr.denominator.end(), cr.numerator.begin(),
                      cr.numerator.end(), std::back_inserter(den));
  cr.numerator = std::move(num);
  cr.denominator = std::move(den);
  return cr;
}

TruncatedSeries expand(const CyclotomicRational& cr, std::span<const std::int64_t> bound) {
  if (bound.size() != cr.vars)
    throw Error(ErrorCode::MalformedSeries, "bound has " + std::to_string(bound.size()) +
                                                " entries for " + std::to_string(cr.vars) +
                                                " variables");
  auto check = [&](const ExponentVector& a) {
    if (a.size() != cr.vars) throw Error(ErrorCode::MalformedSeries, "exponent " + show(a) + " has the wrong length");
    if (std::any_of(a.begin(), a.end(), [](std::int64_t x) { return x < 0; }))
      throw Error(ErrorCode::MalformedSeries, "negative exponent " + show(a));
  };
  for (const auto& a : cr.numerator) check(a);
  for (const auto& a : cr.denominator) {
    check(a);
    if (is_zero(a)) throw Error(ErrorCode::DivergentAtOrigin, "denominator factor 1 - t^0");
  }

  Box box(bound);
  std::vector<Integer> dense(box.volume);
  dense[0] = 1;
  // Row-major order puts a - shift before a, so both passes can run in place.
  auto shifted = [&](std::size_t i, const ExponentVector& shift, std::size_t& from) {
    ExponentVector a = box.point(i);
    for (std::size_t k = 0; k < a.size(); ++k) {
      a[k] -= shift[k];
      if (a[k] < 0) return false;
    }
    from = box.index(a);
    return true;
  };
  std::vector<ExponentVector> num = cr.numerator, den = cr.denominator;
  std::sort(num.begin(), num.end());
  std::sort(den.begin(), den.end());
  for (const auto& b : num) {
    if (!box.inside(b)) continue;
    for (std::size_t i = box.volume; i-- > 0;) {
      std::size_t from;
      if (shifted(i, b, from)) dense[i] -= dense[from];
    }
  }
  for (const auto& a : den) {
    if (!box.inside(a)) continue;
    for (std::size_t i = 0; i < box.volume; ++i) {
      std::size_t from;
      if (shifted(i, a, from)) dense[i] += dense[from];
    }
  }
  return collect(box, dense);
}

TruncatedSeries count_fibers(const SemigroupPresentation& sp, const EssentialDivisors& ed,
                             std::span<const std::int64_t> bound) {
  if (bound.size() != ed.p())
    throw Error(ErrorCode::DimensionMismatch, "one bound per essential valuation is required");
  Box box(bound);
  std::vector<Integer> dense(box.volume);
  for (const auto& element : enumerate_semigroup(sp, ed.ws, bound))
    dense[box.index(monomial_map(element.value, ed.ws))] += 1;
  return collect(box, dense);
}

TruncatedSeries toric_fibers(const std::vector<RationalVector>& generators,
                             const std::vector<IntVector>& weights,
                             std::span<const std::int64_t> bound) {
  if (bound.size() != weights.size())
    throw Error(ErrorCode::DimensionMismatch, "one bound per weight is required");
  const std::size_t d = generators.empty() ? 0 : generators.front().size();
  std::vector<ExponentVector> steps;
  for (const auto& gen : generators) {
    ExponentVector s = monomial_map(gen, weights);
    if (std::any_of(s.begin(), s.end(), [](std::int64_t x) { return x < 0; }))
      throw Error(ErrorCode::NoInteriorWeight, "a weight is negative on a generator");
    steps.push_back(std::move(s));
  }
  bool interior = false;
  for (std::size_t k = 0; k < weights.size() && !interior; ++k)
    interior = std::all_of(steps.begin(), steps.end(), [&](const ExponentVector& s) { return s[k] > 0; });
  if (!interior)
    throw Error(ErrorCode::NoInteriorWeight, "no weight is positive on every generator");

  Box box(bound);
  std::vector<Integer> dense(box.volume);
  std::set<RationalVector> seen{RationalVector(d, Rational(0))};
  std::deque<std::pair<RationalVector, ExponentVector>> queue{
      {RationalVector(d, Rational(0)), ExponentVector(weights.size(), 0)}};
  while (!queue.empty()) {
    auto [x, a] = std::move(queue.front());
    queue.pop_front();
    dense[box.index(a)] += 1;
    for (std::size_t j = 0; j < generators.size(); ++j) {
      ExponentVector b = a;
      for (std::size_t k = 0; k < b.size(); ++k) b[k] += steps[j][k];
      if (!box.inside(b)) continue;
      RationalVector y = x;
      for (std::size_t i = 0; i < d; ++i) y[i] += generators[j][i];
      if (seen.insert(y).second) queue.emplace_back(std::move(y), std::move(b));
    }
  }
  return collect(box, dense);
}

CyclotomicRational specialize_sum(const CyclotomicRational& cr) {
  CyclotomicRational out;
  out.vars = 1;
  out.groups = {0, 0, 1, false};
  auto total = [](const ExponentVector& a) {
    std::int64_t s = 0;
    for (auto x : a) s += x;
    return ExponentVector{s};
  };
  for (const auto& a : cr.numerator) out.numerator.push_back(total(a));
  for (const auto& a : cr.denominator) out.denominator.push_back(total(a));
  out.sort();
  return out;
}

CyclotomicRational substitute_power(const CyclotomicRational& cr, const Rational& k) {
  if (cr.vars != 1) throw Error(ErrorCode::MalformedSeries, "substitution needs one variable");
  auto scale = [&](const ExponentVector& a) {
    Rational v = k * a[0];
    if (v.get_den() != 1 || v <= 0)
      throw Error(ErrorCode::MalformedSeries, "t -> t^" + k.get_str() + " leaves exponent " + v.get_str());
    return ExponentVector{to_int64(v.get_num())};
  };
  CyclotomicRational out = cr;
  for (auto& a : out.numerator) a = scale(a);
  for (auto& a : out.denominator) a = scale(a);
  out.sort();
  return out;
}

CyclotomicRational multiply(const CyclotomicRational& a, const CyclotomicRational& b) {
  if (a.vars != b.vars) throw Error(ErrorCode::DimensionMismatch, "variable counts differ");
  CyclotomicRational out = a;
  out.numerator.insert(out.numerator.end(), b.numerator.begin(), b.numerator.end());
  out.denominator.insert(out.denominator.end(), b.denominator.begin(), b.denominator.end());
  out.sort();
  return out;
}

CyclotomicRational divide(const CyclotomicRational& a, const CyclotomicRational& b) {
  CyclotomicRational inverse = b;
  std::swap(inverse.numerator, inverse.denominator);
  return multiply(a, inverse);
}

}  // namespace qoi
