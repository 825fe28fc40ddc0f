#include "qoi/inverse.hpp"

#include <algorithm>
#include <string>

#include "qoi/error.hpp"

namespace qoi {

namespace {

std::string show(const ExponentVector& a) {
  std::string out = "(";
  for (std::size_t i = 0; i < a.size(); ++i) out += (i ? "," : "") + std::to_string(a[i]);
  return out + ")";
}

bool leq(const ExponentVector& a, const ExponentVector& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] > b[k]) return false;
  return true;
}

// n with beta = n * alpha, or 0.
std::int64_t multiple_of(const ExponentVector& beta, const ExponentVector& alpha) {
  std::int64_t n = 0;
  for (std::size_t k = 0; k < beta.size(); ++k) {
    if (alpha[k] == 0) {
      if (beta[k] != 0) return 0;
      continue;
    }
    if (beta[k] % alpha[k] != 0) return 0;
    std::int64_t q = beta[k] / alpha[k];
    if (n != 0 && q != n) return 0;
    n = q;
  }
  return n;
}

RationalVector to_rational(const ExponentVector& a) {
  RationalVector v;
  for (auto x : a) v.emplace_back(static_cast<long>(x));
  return v;
}

// Columns given as exponent vectors, so the matrix is p x columns.size().
RationalMatrix from_columns(const std::vector<ExponentVector>& columns, std::size_t p) {
  RationalMatrix m(p, RationalVector(columns.size()));
  for (std::size_t k = 0; k < columns.size(); ++k)
    for (std::size_t r = 0; r < p; ++r) m[r][k] = Rational(static_cast<long>(columns[k][r]));
  return m;
}

class Recovery {
 public:
  Recovery(const CyclotomicRational& cr, RecoveryReport& report)
      : cr_(cr), report_(report), pairing_(pair_factors(cr)) {
    report_.d = pairing_.d;
    report_.g = pairing_.pairs.size();
    for (const auto& pair : pairing_.pairs) report_.ns.push_back(pair.n);
  }

  const Pairing& pairing() const { return pairing_; }

  // Unique solution of columns * x = alpha_{d+j} for every j.
  std::vector<RationalVector> solve_all(const std::vector<ExponentVector>& columns) {
    std::vector<RationalVector> out;
    for (std::size_t j = 0; j < report_.g; ++j) {
      auto x = solve(columns, pairing_.pairs[j].alpha);
      if (!x)
        throw Error(ErrorCode::InconsistentSystem,
                    "no unique solution for the system with right-hand side " +
                        show(pairing_.pairs[j].alpha));
      out.push_back(std::move(*x));
    }
    return out;
  }

  std::optional<RationalVector> solve(const std::vector<ExponentVector>& columns,
                                      const ExponentVector& rhs) {
    SolveStep step;
    step.matrix = from_columns(columns, cr_.vars);
    step.rhs = to_rational(rhs);
    SolveResult result = solve_exact(step.matrix, step.rhs);
    if (result.status == SolveStatus::Unique) step.solution = result.solution;
    report_.solve_log.push_back(step);
    if (result.status != SolveStatus::Unique) return std::nullopt;
    return result.solution;
  }

 private:
  const CyclotomicRational& cr_;
  RecoveryReport& report_;
  Pairing pairing_;
};

std::vector<RationalVector> padded(std::vector<RationalVector> gammas, std::size_t d) {
  for (auto& gamma : gammas) gamma.resize(d, Rational(0));
  return gammas;
}

void finish(RecoveryReport& report, std::vector<RationalVector> gammas, std::size_t expected_c) {
  auto lambdas = sort_columns_lex(lambdas_from_gammas(gammas, report.ns));
  CharacteristicSequence cs{report.d, lambdas};
  SemigroupPresentation sp;
  try {
    sp = validate(cs);
  } catch (const Error& e) {
    throw Error(ErrorCode::NotNormalizable, std::string(e.name()) + ": " + e.detail());
  }
  if (!sp.normalized)
    throw Error(ErrorCode::NotNormalizable, "recovered exponents are not normalized");
  if (sp.ns != report.ns)
    throw Error(ErrorCode::InconsistentSystem,
                "recovered exponents give different characteristic integers");
  if (sp.c != expected_c)
    throw Error(ErrorCode::InconsistentSystem,
                "recovered exponents give equisingular dimension " + std::to_string(sp.c) +
                    ", expected " + std::to_string(expected_c));
  report.c = sp.c;
  report.gammas = sp.gammas;
  report.lambdas = sp.char_seq.lambdas;
}

}  // namespace

std::string_view branch_name(RecoveryBranch branch) noexcept {
  switch (branch) {
    case RecoveryBranch::S2_GE_2: return "S2_GE_2";
    case RecoveryBranch::S2_EQ_0: return "S2_EQ_0";
    case RecoveryBranch::S2_EQ_1: return "S2_EQ_1";
    case RecoveryBranch::DIM2: return "DIM2";
    case RecoveryBranch::DIM2_QUADRATIC_CONE: return "DIM2_QUADRATIC_CONE";
  }
  return "unknown";
}

Pairing pair_factors(const CyclotomicRational& cr) {
  if (cr.denominator.size() <= cr.numerator.size())
    throw Error(ErrorCode::NoPairing, "the denominator must have more factors than the numerator");
  Pairing pairing;
  pairing.d = cr.denominator.size() - cr.numerator.size();

  std::vector<ExponentVector> betas = cr.numerator;
  std::sort(betas.begin(), betas.end(), [](const ExponentVector& a, const ExponentVector& b) {
    std::int64_t sa = 0, sb = 0;
    for (auto x : a) sa += x;
    for (auto x : b) sb += x;
    return sa != sb ? sa < sb : a < b;
  });
  for (std::size_t i = 0; i + 1 < betas.size(); ++i)
    if (!leq(betas[i], betas[i + 1]) || betas[i] == betas[i + 1])
      throw Error(ErrorCode::AmbiguousOrder,
                  show(betas[i]) + " and " + show(betas[i + 1]) + " are not strictly comparable");

  std::vector<ExponentVector> remaining = cr.denominator;
  std::sort(remaining.begin(), remaining.end());
  for (const auto& beta : betas) {
    // Among the admissible factors on the ray of beta, the largest is paired.
    std::size_t best = remaining.size();
    std::int64_t best_n = 0;
    for (std::size_t k = 0; k < remaining.size(); ++k) {
      std::int64_t n = multiple_of(beta, remaining[k]);
      if (n >= 2 && (best_n == 0 || n < best_n)) {
        best = k;
        best_n = n;
      }
    }
    if (best == remaining.size())
      throw Error(ErrorCode::NoPairing, "no denominator factor divides " + show(beta));
    pairing.pairs.push_back({beta, remaining[best], best_n});
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
  }
  pairing.unpaired = std::move(remaining);
  return pairing;
}

RecoveryReport recover(const CyclotomicRational& cr) {
  for (const auto& a : cr.numerator)
    if (a.size() != cr.vars) throw Error(ErrorCode::MalformedSeries, "exponent " + show(a) + " has the wrong length");
  for (const auto& a : cr.denominator)
    if (a.size() != cr.vars) throw Error(ErrorCode::MalformedSeries, "exponent " + show(a) + " has the wrong length");
  if (cr.groups.size() != cr.vars)
    throw Error(ErrorCode::MalformedSeries, "groups do not add up to the number of variables");
  if (cr.groups.s0 == 0) throw Error(ErrorCode::UnknownShape, "the origin group is empty");
  if (cr.numerator.empty()) throw Error(ErrorCode::UnknownShape, "no numerator factor");

  RecoveryReport report;
  Recovery rec(cr, report);
  const Pairing& pairing = rec.pairing();
  const std::size_t d = pairing.d;
  const VariableGroups& gr = cr.groups;
  const ExponentVector origin = indicator(gr);
  const auto& unpaired = pairing.unpaired;

  if (d < 2) throw Error(ErrorCode::UnknownShape, "dimension " + std::to_string(d));

  if (d == 2) {
    if (cr.vars == 1 && cr.numerator == std::vector<ExponentVector>{{2}} &&
        cr.denominator == std::vector<ExponentVector>{{1}, {1}, {1}}) {
      report.branch = RecoveryBranch::DIM2_QUADRATIC_CONE;
      finish(report, {{Rational(1, 2), Rational(1, 2)}}, 2);
      return report;
    }
    report.branch = RecoveryBranch::DIM2;
    auto gammas = rec.solve_all(unpaired);
    std::size_t c = static_cast<std::size_t>(std::count_if(
        gammas.back().begin(), gammas.back().end(), [](const Rational& x) { return x != 0; }));
    finish(report, gammas, c);
    return report;
  }

  if (gr.s2 == 1) {
    report.branch = RecoveryBranch::S2_EQ_1;
    const std::size_t s1 = gr.s1, c = s1 + 2;
    if (c > d) throw Error(ErrorCode::UnknownShape, "too few coordinates for a codimension two component");
    // The first-group projections of u_1..u_{s1} form a diagonal matrix.
    std::vector<Rational> diagonal(s1);
    std::vector<bool> seen(s1, false);
    std::size_t projected = 0;
    for (const auto& a : unpaired) {
      std::size_t nonzero = 0, position = 0;
      for (std::size_t k = 0; k < s1; ++k)
        if (a[k] != 0) {
          ++nonzero;
          position = k;
        }
      if (nonzero == 0) continue;
      ++projected;
      if (nonzero != 1 || seen[position])
        throw Error(ErrorCode::UnknownShape, "first-group projections are not diagonal");
      seen[position] = true;
      diagonal[position] = Rational(static_cast<long>(a[position]));
    }
    if (projected != s1)
      throw Error(ErrorCode::UnknownShape,
                  std::to_string(projected) + " codimension one factors, expected " + std::to_string(s1));

    std::vector<ExponentVector> columns;
    for (std::size_t k = 0; k < s1; ++k) {
      ExponentVector col(cr.vars, 0);
      col[k] = to_int64(diagonal[k].get_num());
      columns.push_back(std::move(col));
    }
    std::vector<RationalVector> gammas;
    for (std::size_t j = 0; j < report.g; ++j) {
      RationalVector gamma(d, Rational(0));
      for (std::size_t k = 0; k < s1; ++k)
        gamma[k] = Rational(static_cast<long>(pairing.pairs[j].alpha[k])) / diagonal[k];
      if (j + 1 == report.g) gamma[c - 2] = gamma[c - 1] = Rational(1, 2);
      gammas.push_back(std::move(gamma));
    }
    SolveStep step;
    step.matrix = from_columns(columns, s1);
    for (std::size_t j = 0; j < report.g && s1 > 0; ++j) {
      SolveStep s = step;
      for (std::size_t k = 0; k < s1; ++k)
        s.rhs.emplace_back(static_cast<long>(pairing.pairs[j].alpha[k]));
      s.solution.assign(gammas[j].begin(), gammas[j].begin() + static_cast<std::ptrdiff_t>(s1));
      report.solve_log.push_back(std::move(s));
    }
    finish(report, gammas, c);
    return report;
  }

  const std::size_t mult = static_cast<std::size_t>(std::count(unpaired.begin(), unpaired.end(), origin));
  std::vector<ExponentVector> columns;
  for (const auto& a : unpaired)
    if (a != origin) columns.push_back(a);

  if (gr.s2 >= 2) {
    report.branch = RecoveryBranch::S2_GE_2;
    const std::size_t c = d - mult;
    finish(report, padded(rec.solve_all(columns), d), c);
    return report;
  }

  report.branch = RecoveryBranch::S2_EQ_0;
  std::size_t c = d - mult;
  if (!rec.solve(columns, pairing.pairs.back().alpha)) {
    if (mult == 0) throw Error(ErrorCode::InconsistentSystem, "no indicator factor to extend the system");
    columns.push_back(origin);
    ++c;
  }
  finish(report, padded(rec.solve_all(columns), d), c);
  return report;
}

}  // namespace qoi
