#include <doctest.h>

#include <cstdlib>
#include <functional>
#include <set>

#include "oracles.hpp"
#include "qoi/charseq.hpp"
#include "qoi/error.hpp"
#include "random_instances.hpp"

using namespace qoi;

namespace {

Rational q(long p, long r = 1) { return make_rational(p, r); }

CharacteristicSequence seq(std::size_t d, std::vector<RationalVector> lambdas) {
  return CharacteristicSequence{d, std::move(lambdas)};
}

CharacteristicSequence worked() { return seq(3, {{q(1, 3), q(0), q(0)}, {q(5, 9), q(1, 9), q(0)}}); }

ErrorCode code_of(const CharacteristicSequence& cs) {
  try {
    validate(cs);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("validate accepted the input");
  return ErrorCode::ValueTooLarge;
}

RationalVector value_of(const SemigroupPresentation& sp, const IntVector& alpha,
                        const std::vector<std::int64_t>& l) {
  RationalVector v(sp.d());
  for (std::size_t i = 0; i < sp.d(); ++i) {
    v[i] = alpha[i];
    for (std::size_t j = 0; j < sp.g(); ++j) v[i] += l[j] * sp.gammas[j][i];
  }
  return v;
}

// Every alpha + sum l_j gamma_j with alpha in [0, amax]^d and 0 <= l_j < n_j.
std::vector<std::pair<IntVector, std::vector<std::int64_t>>> small_expansions(
    const SemigroupPresentation& sp, long amax) {
  std::vector<std::pair<IntVector, std::vector<std::int64_t>>> out;
  IntVector alpha(sp.d(), 0);
  std::vector<std::int64_t> l(sp.g(), 0);
  std::function<void(std::size_t)> walk = [&](std::size_t k) {
    if (k == sp.d() + sp.g()) {
      out.emplace_back(alpha, l);
      return;
    }
    if (k < sp.d()) {
      for (long x = 0; x <= amax; ++x) {
        alpha[k] = x;
        walk(k + 1);
      }
    } else {
      for (std::int64_t x = 0; x < sp.ns[k - sp.d()]; ++x) {
        l[k - sp.d()] = x;
        walk(k + 1);
      }
    }
  };
  walk(0);
  return out;
}

std::set<RationalVector> brute_force_values(const SemigroupPresentation& sp,
                                          const std::vector<IntVector>& weights,
                                          const std::vector<long>& bounds, long amax) {
  std::set<RationalVector> out;
  for (const auto& [alpha, l] : small_expansions(sp, amax)) {
    auto v = value_of(sp, alpha, l);
    bool inside = true;
    for (std::size_t k = 0; k < weights.size(); ++k) inside = inside && dot(weights[k], v) <= bounds[k];
    if (inside) out.insert(v);
  }
  return out;
}

}  // namespace

TEST_CASE("worked example presentation") {
  auto sp = validate(worked());
  CHECK(sp.gammas == std::vector<RationalVector>{{q(1, 3), q(0), q(0)}, {q(11, 9), q(1, 9), q(0)}});
  CHECK(sp.ns == std::vector<std::int64_t>{3, 9});
  CHECK(sp.c == 2);
  CHECK(sp.degree == 27);
  CHECK_FALSE(sp.normalized);
  CHECK(sp.m == IntVector{9, 9, 1});
  CHECK(sp.lattices.size() == 3);
  CHECK(member(IntVector{3, 3, 1}, sp.lattice_N));
}

TEST_CASE("quadratic cone presentation") {
  auto sp = validate(seq(2, {{q(1, 2), q(1, 2)}}));
  CHECK(sp.gammas == std::vector<RationalVector>{{q(1, 2), q(1, 2)}});
  CHECK(sp.ns == std::vector<std::int64_t>{2});
  CHECK(sp.c == 2);
  CHECK(sp.normalized);
  CHECK(sp.m == IntVector{2, 2});
}

TEST_CASE("normalization flag") {
  CHECK(validate(seq(2, {{q(3, 2), q(1, 2)}})).normalized);
  CHECK_FALSE(validate(seq(2, {{q(1, 2), q(0)}})).normalized);
  CHECK(validate(seq(2, {{q(3, 2), q(0)}})).normalized);
  // Columns out of lexicographic order are rejected before normalization is judged.
  CHECK(code_of(seq(2, {{q(1, 2), q(3, 2)}})) == ErrorCode::LexOrderViolated);
}

TEST_CASE("validation errors") {
  CHECK(code_of(seq(3, {{q(1, 3), q(0), q(0)}, {q(1, 3), q(0), q(0)}})) ==
        ErrorCode::NotStrictlyIncreasing);
  CHECK(code_of(seq(2, {{q(3, 2), q(1, 2)}, {q(2), q(1, 3)}})) == ErrorCode::NotStrictlyIncreasing);
  CHECK(code_of(seq(1, {{q(3, 2)}})) == ErrorCode::BadDimension);
  CHECK(code_of(seq(3, {{q(1, 2), q(1, 2)}})) == ErrorCode::BadDimension);
  CHECK(code_of(seq(2, {})) == ErrorCode::BadDimension);
  CHECK(code_of(seq(2, {{q(3, 2), q(-1, 2)}})) == ErrorCode::NegativeExponent);
  CHECK(code_of(seq(2, {{q(1, 2), q(0)}, {q(1), q(0)}})) == ErrorCode::RedundantExponent);
  CHECK(code_of(seq(2, {{q(1), q(1)}})) == ErrorCode::RedundantExponent);
  CHECK(code_of(seq(3, {{q(0), q(1, 2), q(0)}})) == ErrorCode::LexOrderViolated);
}

TEST_CASE("gamma and lambda conversions are inverse") {
  auto sp = validate(worked());
  CHECK(lambdas_from_gammas(sp.gammas, sp.ns) == worked().lambdas);
  CHECK(gammas_from_lambdas(worked().lambdas, sp.ns) == sp.gammas);
}

TEST_CASE("column sorting") {
  std::vector<RationalVector> l{{q(0), q(1, 2), q(1, 3)}, {q(1), q(1, 2), q(2, 3)}};
  CHECK_FALSE(columns_lex_sorted(l, 3));
  auto s = sort_columns_lex(l);
  CHECK(columns_lex_sorted(s, 3));
  CHECK(s == std::vector<RationalVector>{{q(1, 2), q(1, 3), q(0)}, {q(1, 2), q(2, 3), q(1)}});
  CHECK(strictly_less(l[0], l[1]));
  CHECK_FALSE(strictly_less(l[1], l[0]));
  CHECK_FALSE(strictly_less(l[0], l[0]));
}

TEST_CASE("canonical form examples") {
  auto sp = validate(worked());
  auto a = canonical_form(RationalVector{q(11, 9), q(1, 9), q(0)}, sp);
  REQUIRE(a);
  CHECK(a->alpha == IntVector{0, 0, 0});
  CHECK(a->l == std::vector<std::int64_t>{0, 1});
  auto b = canonical_form(RationalVector{q(2), q(0), q(0)}, sp);
  REQUIRE(b);
  CHECK(b->alpha == IntVector{2, 0, 0});
  CHECK(b->l == std::vector<std::int64_t>{0, 0});
  CHECK_FALSE(canonical_form(RationalVector{q(1, 9), q(0), q(0)}, sp));
}

TEST_CASE("canonical form agrees with brute-force expansion") {
  auto sp = validate(worked());
  // Brute force: the set of values alpha + sum l gamma with small alpha.
  std::map<RationalVector, int> seen;
  for (const auto& [alpha, l] : small_expansions(sp, 2)) {
    auto v = value_of(sp, alpha, l);
    ++seen[v];
    auto cf = canonical_form(v, sp);
    REQUIRE(cf);
    CHECK(cf->alpha == alpha);
    CHECK(cf->l == l);
  }
  for (const auto& [v, count] : seen) CHECK(count == 1);
  // Points of the lattice M with small coordinates that are not in the list are not members.
  for (long a = 0; a <= 9; ++a)
    for (long b = 0; b <= 9; ++b) {
      RationalVector v{q(a, 9), q(b, 9), q(0)};
      bool brute = false;
      for (const auto& [alpha, l] : small_expansions(sp, 1))
        if (value_of(sp, alpha, l) == v) brute = true;
      CHECK(canonical_form(v, sp).has_value() == brute);
    }
}

TEST_CASE("enumerate semigroup examples") {
  auto sp = validate(worked());
  auto small = enumerate_semigroup(sp, {{9, 0, 0}, {3, 3, 1}}, std::vector<std::int64_t>{3, 1});
  std::set<RationalVector> values;
  for (const auto& e : small) values.insert(e.value);
  CHECK(values == brute_force_values(sp, {{9, 0, 0}, {3, 3, 1}}, {3, 1}, 1));
  // (0,0,1) has weights (0,1) and belongs alongside 0 and gamma_1.
  CHECK(values == std::set<RationalVector>{
                      {q(0), q(0), q(0)}, {q(1, 3), q(0), q(0)}, {q(0), q(0), q(1)}});

  auto origin = enumerate_semigroup(sp, {{9, 0, 0}, {3, 3, 1}}, std::vector<std::int64_t>{0, 0});
  REQUIRE(origin.size() == 1);
  CHECK(origin[0].value == RationalVector{q(0), q(0), q(0)});

  auto cone = validate(seq(3, {{q(1, 2), q(1, 2), q(0)}}));
  auto found = enumerate_semigroup(cone, {{1, 1, 0}, {1, 1, 1}}, std::vector<std::int64_t>{1, 1});
  std::set<RationalVector> cone_values;
  for (const auto& e : found) cone_values.insert(e.value);
  CHECK(cone_values == brute_force_values(cone, {{1, 1, 0}, {1, 1, 1}}, {1, 1}, 1));
  CHECK(cone_values == std::set<RationalVector>{{q(0), q(0), q(0)},
                                                {q(1), q(0), q(0)},
                                                {q(0), q(1), q(0)},
                                                {q(0), q(0), q(1)},
                                                {q(1, 2), q(1, 2), q(0)}});

  try {
    enumerate_semigroup(sp, {{9, 0, 0}}, std::vector<std::int64_t>{3});
    FAIL("expected NoInteriorWeight");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoInteriorWeight);
  }
}

TEST_CASE("enumeration is complete, duplicate free and ordered on random presentations") {
  testing_support::Limits lim;
  lim.max_degree = 24;
  testing_support::InstanceGenerator gen(101, lim);
  for (const auto& inst : gen.corpus(24)) {
    const auto& sp = inst.sp;
    std::vector<IntVector> weights = inst.ed.ws;
    std::vector<std::int64_t> bounds(weights.size());
    for (std::size_t k = 0; k < weights.size(); ++k) {
      Integer s = 0;
      for (const auto& x : weights[k]) s += x;
      bounds[k] = to_int64(s) * 2;
    }
    auto listed = enumerate_semigroup(sp, weights, bounds);
    std::set<RationalVector> values;
    for (std::size_t i = 0; i < listed.size(); ++i) {
      const auto& e = listed[i];
      CHECK(values.insert(e.value).second);
      CHECK(e.value == value_of(sp, e.alpha, e.l));
      auto cf = canonical_form(e.value, sp);
      REQUIRE(cf);
      CHECK(cf->alpha == e.alpha);
      CHECK(cf->l == e.l);
      if (i > 0) CHECK(std::tie(listed[i - 1].alpha, listed[i - 1].l) < std::tie(e.alpha, e.l));
    }
    auto within = [&](const RationalVector& v) {
      for (std::size_t k = 0; k < weights.size(); ++k)
        if (dot(weights[k], v) > bounds[k]) return false;
      return true;
    };
    std::size_t expected = 0;
    for (const auto& [alpha, l] : small_expansions(sp, 2)) {
      auto v = value_of(sp, alpha, l);
      if (!within(v)) continue;
      ++expected;
      CHECK(values.count(v) == 1);
    }
    CHECK(expected <= values.size());
  }
}

TEST_CASE("degree equals the index of M over the integer lattice") {
  testing_support::InstanceGenerator gen(202);
  for (const auto& inst : gen.corpus(40)) {
    CHECK(inst.sp.degree == static_cast<long>(oracle::torsion_order(inst.cs.lambdas, inst.cs.d)));
    auto z = lattice_from_generators({}, inst.cs.d, true);
    auto m = lattice_from_generators(inst.cs.lambdas, inst.cs.d, true);
    CHECK(inst.sp.degree == lattice_index(z, m));
    CHECK(lambdas_from_gammas(inst.sp.gammas, inst.sp.ns) == inst.cs.lambdas);
  }
}

TEST_CASE("appending zero coordinates keeps the invariants") {
  testing_support::InstanceGenerator gen(303);
  for (const auto& inst : gen.corpus(24, false)) {
    for (std::size_t k = 1; k <= 2; ++k) {
      auto padded = validate(testing_support::pad_zeros(inst.cs, k));
      CHECK(padded.c == inst.sp.c);
      CHECK(padded.ns == inst.sp.ns);
      for (std::size_t j = 0; j < inst.sp.g(); ++j) {
        auto g = inst.sp.gammas[j];
        g.resize(inst.cs.d + k, Rational(0));
        CHECK(padded.gammas[j] == g);
      }
    }
  }
}

TEST_CASE("enumeration does not depend on the worker count") {
  auto sp = validate(seq(3, {{q(3, 2), q(1, 3), q(0)}, {q(2), q(1, 2), q(1, 4)}}));
  std::vector<IntVector> weights{{6, 6, 4}};
  std::vector<std::int64_t> bound{60};
  setenv("QOI_THREADS", "1", 1);
  auto one = enumerate_semigroup(sp, weights, bound);
  setenv("QOI_THREADS", "7", 1);
  auto seven = enumerate_semigroup(sp, weights, bound);
  unsetenv("QOI_THREADS");
  REQUIRE(one.size() == seven.size());
  CHECK(one.size() > 100);
  for (std::size_t i = 0; i < one.size(); ++i) CHECK(one[i].value == seven[i].value);
}
