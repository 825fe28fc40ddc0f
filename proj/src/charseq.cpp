#include "qoi/charseq.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "qoi/error.hpp"
#include "qoi/parallel.hpp"

namespace qoi {

namespace {

std::string show(std::span<const Rational> v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].get_str();
  return out + ")";
}

RationalVector column(const std::vector<RationalVector>& lambdas, std::size_t i) {
  RationalVector col;
  col.reserve(lambdas.size());
  for (const auto& lambda : lambdas) col.push_back(lambda[i]);
  return col;
}

SemigroupPresentation derive(const CharacteristicSequence& cs, std::size_t min_dim) {
  const std::size_t d = cs.d;
  if (d < min_dim)
    throw Error(ErrorCode::BadDimension,
                "ambient dimension " + std::to_string(d) + " is below " + std::to_string(min_dim));
  if (cs.lambdas.empty())
    throw Error(ErrorCode::BadDimension, "at least one characteristic exponent is required");
  for (std::size_t j = 0; j < cs.g(); ++j) {
    if (cs.lambdas[j].size() != d)
      throw Error(ErrorCode::BadDimension, "lambda_" + std::to_string(j + 1) + " has length " +
                                               std::to_string(cs.lambdas[j].size()) +
                                               ", expected " + std::to_string(d));
    for (const auto& x : cs.lambdas[j])
      if (x < 0)
        throw Error(ErrorCode::NegativeExponent,
                    "lambda_" + std::to_string(j + 1) + " = " + show(cs.lambdas[j]));
  }
  for (std::size_t j = 0; j + 1 < cs.g(); ++j)
    if (!strictly_less(cs.lambdas[j], cs.lambdas[j + 1]))
      throw Error(ErrorCode::NotStrictlyIncreasing,
                  "lambda_" + std::to_string(j + 1) + " = " + show(cs.lambdas[j]) +
                      " is not below lambda_" + std::to_string(j + 2) + " = " +
                      show(cs.lambdas[j + 1]));
  if (!columns_lex_sorted(cs.lambdas, d))
    throw Error(ErrorCode::LexOrderViolated,
                "coordinate columns are not lexicographically non-increasing");

  SemigroupPresentation sp;
  sp.char_seq = cs;
  sp.lattices.push_back(lattice_from_generators({}, d, true));
  for (std::size_t j = 0; j < cs.g(); ++j) {
    std::span<const RationalVector> prefix(cs.lambdas.data(), j + 1);
    sp.lattices.push_back(lattice_from_generators(prefix, d, true));
    Integer index = lattice_index(sp.lattices[j], sp.lattices[j + 1]);
    if (index == 1)
      throw Error(ErrorCode::RedundantExponent,
                  "lambda_" + std::to_string(j + 1) + " = " + show(cs.lambdas[j]) +
                      " already lies in the previous lattice");
    sp.ns.push_back(to_int64(index));
    sp.degree *= index;
  }
  sp.gammas = gammas_from_lambdas(cs.lambdas, sp.ns);

  const RationalVector& last = cs.lambdas.back();
  sp.c = static_cast<std::size_t>(
      std::count_if(last.begin(), last.end(), [](const Rational& x) { return x != 0; }));

  sp.lattice_N = dual_sublattice(sp.gammas, d);
  sp.m.assign(d, Integer(1));
  for (std::size_t i = 0; i < d; ++i)
    for (const auto& gamma : sp.gammas) {
      Integer den = gamma[i].get_den();
      mpz_lcm(sp.m[i].get_mpz_t(), sp.m[i].get_mpz_t(), den.get_mpz_t());
    }

  const RationalVector& first = cs.lambdas.front();
  bool on_first_axis =
      std::all_of(first.begin() + 1, first.end(), [](const Rational& x) { return x == 0; });
  sp.normalized = !(on_first_axis && first[0] <= 1);
  return sp;
}

}  // namespace

bool strictly_less(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) return false;
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strict = true;
  }
  return strict;
}

bool columns_lex_sorted(const std::vector<RationalVector>& lambdas, std::size_t d) {
  for (std::size_t i = 0; i + 1 < d; ++i)
    if (column(lambdas, i) < column(lambdas, i + 1)) return false;
  return true;
}

std::vector<RationalVector> sort_columns_lex(std::vector<RationalVector> lambdas) {
  if (lambdas.empty()) return lambdas;
  const std::size_t d = lambdas.front().size();
  std::vector<RationalVector> columns;
  for (std::size_t i = 0; i < d; ++i) columns.push_back(column(lambdas, i));
  std::stable_sort(columns.begin(), columns.end(), std::greater<>());
  for (std::size_t j = 0; j < lambdas.size(); ++j)
    for (std::size_t i = 0; i < d; ++i) lambdas[j][i] = columns[i][j];
  return lambdas;
}

std::vector<RationalVector> gammas_from_lambdas(const std::vector<RationalVector>& lambdas,
                                                std::span<const std::int64_t> ns) {
  std::vector<RationalVector> gammas;
  for (std::size_t j = 0; j < lambdas.size(); ++j) {
    if (j == 0) {
      gammas.push_back(lambdas[0]);
      continue;
    }
    RationalVector next(lambdas[j].size());
    for (std::size_t i = 0; i < next.size(); ++i)
      next[i] = Rational(ns[j - 1]) * gammas[j - 1][i] + lambdas[j][i] - lambdas[j - 1][i];
    gammas.push_back(std::move(next));
  }
  return gammas;
}

std::vector<RationalVector> lambdas_from_gammas(const std::vector<RationalVector>& gammas,
                                                std::span<const std::int64_t> ns) {
  std::vector<RationalVector> lambdas;
  for (std::size_t j = 0; j < gammas.size(); ++j) {
    if (j == 0) {
      lambdas.push_back(gammas[0]);
      continue;
    }
    RationalVector next(gammas[j].size());
    for (std::size_t i = 0; i < next.size(); ++i)
      next[i] = gammas[j][i] - Rational(ns[j - 1]) * gammas[j - 1][i] + lambdas[j - 1][i];
    lambdas.push_back(std::move(next));
  }
  return lambdas;
}

SemigroupPresentation validate(const CharacteristicSequence& cs) { return derive(cs, 2); }

SemigroupPresentation validate_plane_branch(std::span<const Rational> exponents) {
  CharacteristicSequence cs;
  cs.d = 1;
  for (const auto& x : exponents) cs.lambdas.push_back({x});
  return derive(cs, 1);
}

std::optional<SemigroupElement> canonical_form(std::span<const Rational> gamma,
                                               const SemigroupPresentation& sp) {
  if (gamma.size() != sp.d())
    throw Error(ErrorCode::DimensionMismatch,
                "element of length " + std::to_string(gamma.size()) + " in dimension " +
                    std::to_string(sp.d()));
  if (!sp.lattices.back().contains(gamma)) return std::nullopt;

  RationalVector residual(gamma.begin(), gamma.end());
  std::vector<std::int64_t> l(sp.g(), 0);
  for (std::size_t idx = sp.g(); idx-- > 0;) {
    // Exactly one l in [0, n) moves the residual into M_{idx}.
    bool found = false;
    RationalVector candidate = residual;
    for (std::int64_t k = 0; k < sp.ns[idx]; ++k) {
      if (sp.lattices[idx].contains(std::span<const Rational>(candidate))) {
        l[idx] = k;
        residual = candidate;
        found = true;
        break;
      }
      for (std::size_t i = 0; i < candidate.size(); ++i) candidate[i] -= sp.gammas[idx][i];
    }
    if (!found) return std::nullopt;
  }

  SemigroupElement element;
  element.l = std::move(l);
  element.value.assign(gamma.begin(), gamma.end());
  for (const auto& x : residual) {
    if (x.get_den() != 1 || x < 0) return std::nullopt;
    element.alpha.push_back(x.get_num());
  }
  return element;
}

namespace {

struct EnumerationPlan {
  std::size_t d = 0;
  std::vector<std::vector<std::int64_t>> weights;  // machine-size copies
  std::vector<bool> monotone;                      // weight has no negative entry
};

// Depth-first walk over alpha given the slack left by the l-part.
void walk_alpha(const EnumerationPlan& plan, std::size_t coord, std::vector<std::int64_t>& alpha,
                std::vector<std::int64_t>& used, const std::vector<std::int64_t>& slack,
                const std::vector<std::int64_t>& l, const SemigroupPresentation& sp,
                const RationalVector& base, std::vector<SemigroupElement>& out) {
  const std::size_t p = plan.weights.size();
  if (coord == plan.d) {
    for (std::size_t k = 0; k < p; ++k)
      if (used[k] > slack[k]) return;
    SemigroupElement element;
    element.l = l;
    element.value = base;
    for (std::size_t i = 0; i < plan.d; ++i) {
      element.alpha.emplace_back(static_cast<long>(alpha[i]));
      element.value[i] += alpha[i];
    }
    out.push_back(std::move(element));
    return;
  }
  std::vector<std::int64_t> saved = used;
  for (std::int64_t a = 0;; ++a) {
    bool over = false;
    for (std::size_t k = 0; k < p; ++k)
      if (plan.monotone[k] && used[k] > slack[k]) over = true;
    if (over) break;
    alpha[coord] = a;
    walk_alpha(plan, coord + 1, alpha, used, slack, l, sp, base, out);
    for (std::size_t k = 0; k < p; ++k) used[k] += plan.weights[k][coord];
  }
  alpha[coord] = 0;
  used = std::move(saved);
}

}  // namespace

std::vector<SemigroupElement> enumerate_semigroup(const SemigroupPresentation& sp,
                                                  const std::vector<IntVector>& weights,
                                                  std::span<const std::int64_t> bounds) {
  const std::size_t d = sp.d();
  if (weights.size() != bounds.size())
    throw Error(ErrorCode::DimensionMismatch, "one bound per weight is required");
  EnumerationPlan plan;
  plan.d = d;
  bool interior = false;
  for (const auto& w : weights) {
    if (w.size() != d) throw Error(ErrorCode::DimensionMismatch, "weight length differs from d");
    std::vector<std::int64_t> wi;
    for (const auto& x : w) wi.push_back(to_int64(x));
    bool positive = std::all_of(wi.begin(), wi.end(), [](std::int64_t x) { return x > 0; });
    interior = interior || positive;
    plan.monotone.push_back(std::all_of(wi.begin(), wi.end(), [](std::int64_t x) { return x >= 0; }));
    plan.weights.push_back(std::move(wi));
  }
  if (!interior)
    throw Error(ErrorCode::NoInteriorWeight, "no weight is strictly positive on every coordinate");

  // Mixed-radix walk over (l_1, ..., l_g), split into chunks across workers.
  std::size_t total = 1;
  for (auto n : sp.ns) total *= static_cast<std::size_t>(n);
  std::size_t chunks = worker_count();
  std::vector<std::vector<SemigroupElement>> partial(std::min(chunks, total));
  parallel_chunks(total, partial.size(), [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    auto& out = partial[chunk];
    for (std::size_t index = begin; index < end; ++index) {
      std::vector<std::int64_t> l(sp.g());
      std::size_t rest = index;
      for (std::size_t i = sp.g(); i-- > 0;) {
        l[i] = static_cast<std::int64_t>(rest % static_cast<std::size_t>(sp.ns[i]));
        rest /= static_cast<std::size_t>(sp.ns[i]);
      }
      RationalVector base(d, Rational(0));
      for (std::size_t j = 0; j < sp.g(); ++j)
        for (std::size_t i = 0; i < d; ++i) base[i] += Rational(l[j]) * sp.gammas[j][i];
      // slack_k = floor(b_k - <w_k, base>): the budget left for alpha.
      std::vector<std::int64_t> slack;
      bool feasible = true;
      for (std::size_t k = 0; k < weights.size(); ++k) {
        Rational room = Rational(bounds[k]) - dot(weights[k], base);
        Integer fl;
        mpz_fdiv_q(fl.get_mpz_t(), room.get_num_mpz_t(), room.get_den_mpz_t());
        if (plan.monotone[k] && fl < 0) feasible = false;
        slack.push_back(fl.fits_slong_p() ? fl.get_si() : (fl < 0 ? -1 : INT64_MAX / 2));
      }
      if (!feasible) continue;
      std::vector<std::int64_t> alpha(d, 0), used(weights.size(), 0);
      walk_alpha(plan, 0, alpha, used, slack, l, sp, base, out);
    }
  });

  std::vector<SemigroupElement> result;
  for (auto& part : partial)
    for (auto& e : part) result.push_back(std::move(e));
  std::sort(result.begin(), result.end(), [](const SemigroupElement& a, const SemigroupElement& b) {
    if (a.alpha != b.alpha) return a.alpha < b.alpha;
    return a.l < b.l;
  });
  return result;
}

}  // namespace qoi
