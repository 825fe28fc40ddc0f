#include "qoi/io.hpp"

#include <cctype>

namespace qoi {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw MalformedInput(what); }

bool is_integer_text(const std::string& s) {
  std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return !(s.size() - start > 1 && s[start] == '0');
}

const Json& field(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) malformed(std::string("missing field \"") + key + "\"");
  return doc.at(key);
}

std::size_t size_field(const Json& doc, const char* key) {
  const Json& v = field(doc, key);
  if (!v.is_number_unsigned()) malformed(std::string("\"") + key + "\" must be a nonnegative integer");
  return v.get<std::size_t>();
}

std::vector<ExponentVector> exponent_list(const Json& doc, const char* key, std::size_t vars) {
  const Json& list = field(doc, key);
  if (!list.is_array()) malformed(std::string("\"") + key + "\" must be an array");
  std::vector<ExponentVector> out;
  for (const auto& item : list) {
    if (!item.is_array() || item.size() != vars)
      malformed(std::string("every entry of \"") + key + "\" must have " + std::to_string(vars) + " integers");
    ExponentVector a;
    for (const auto& x : item) {
      if (!x.is_number_integer()) malformed(std::string("non-integer exponent in \"") + key + "\"");
      a.push_back(x.get<std::int64_t>());
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::string monomial(const ExponentVector& a) {
  std::string out;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] == 0) continue;
    if (!out.empty()) out += ' ';
    out += a.size() == 1 ? "t" : "t" + std::to_string(k + 1);
    if (a[k] != 1) out += '^' + std::to_string(a[k]);
  }
  return out;
}

std::string product(const std::vector<ExponentVector>& factors) {
  if (factors.empty()) return "1";
  std::string out;
  for (const auto& a : factors) out += "(1 - " + monomial(a) + ")";
  return out;
}

Json groups_json(const VariableGroups& g) { return Json{{"s1", g.s1}, {"s2", g.s2}, {"s0", g.s0}}; }

}  // namespace

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  if (!is_integer_text(num)) malformed("\"" + text + "\" is not a rational number");
  if (slash == std::string::npos) return Rational(Integer(num));
  std::string den = text.substr(slash + 1);
  if (!is_integer_text(den) || den[0] == '-') malformed("\"" + text + "\" is not a rational number");
  Integer p(num), q(den);
  Integer g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  if (q <= 1 || g != 1) malformed("\"" + text + "\" is not in lowest terms");
  return Rational(p, q);
}

std::string format_rational(const Rational& x) { return x.get_str(); }

CharacteristicSequence parse_charseq(const Json& doc) {
  if (field(doc, "kind") != "charseq") malformed("expected a charseq document");
  CharacteristicSequence cs;
  cs.d = size_field(doc, "d");
  const Json& lambdas = field(doc, "lambdas");
  if (!lambdas.is_array()) malformed("\"lambdas\" must be an array");
  for (const auto& lambda : lambdas) {
    if (!lambda.is_array()) malformed("every lambda must be an array of rational strings");
    RationalVector v;
    for (const auto& x : lambda) {
      if (!x.is_string()) malformed("rationals must be given as strings");
      v.push_back(parse_rational(x.get<std::string>()));
    }
    cs.lambdas.push_back(std::move(v));
  }
  return cs;
}

CyclotomicRational parse_series(const Json& doc) {
  const Json& kind = field(doc, "kind");
  if (kind != "shortform" && kind != "cyclotomic") malformed("expected a shortform document");
  CyclotomicRational cr;
  cr.vars = size_field(doc, "vars");
  const Json& groups = field(doc, "groups");
  cr.groups.s1 = size_field(groups, "s1");
  cr.groups.s2 = size_field(groups, "s2");
  cr.groups.s0 = size_field(groups, "s0");
  if (cr.groups.size() != cr.vars) malformed("groups do not add up to \"vars\"");
  cr.numerator = exponent_list(doc, "numerator", cr.vars);
  cr.denominator = exponent_list(doc, "denominator", cr.vars);
  cr.groups.two_group_mode = cr.denominator.size() == cr.numerator.size() + 2;
  cr.sort();
  return cr;
}

Json rational_vector(std::span<const Rational> v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(format_rational(x));
  return out;
}

Json to_json(const CharacteristicSequence& cs) {
  Json lambdas = Json::array();
  for (const auto& l : cs.lambdas) lambdas.push_back(rational_vector(l));
  return Json{{"kind", "charseq"}, {"d", cs.d}, {"lambdas", lambdas}};
}

Json to_json(const CyclotomicRational& cr, bool short_form) {
  return Json{{"kind", short_form ? "shortform" : "cyclotomic"},
              {"vars", cr.vars},
              {"groups", groups_json(cr.groups)},
              {"numerator", cr.numerator},
              {"denominator", cr.denominator}};
}

Json to_json(const TruncatedSeries& ts) {
  Json coeffs = Json::array();
  for (const auto& [a, c] : ts.coeffs) coeffs.push_back(Json{{"exponent", a}, {"coefficient", c.get_str()}});
  return Json{{"vars", ts.vars}, {"bound", ts.bound}, {"coefficients", coeffs}};
}

Json to_json(const EssentialDivisors& ed, const EssentialMatrix& em) {
  Json ws = Json::array();
  for (const auto& w : ed.ws) {
    Json row = Json::array();
    for (const auto& x : w) row.push_back(to_int64(x));
    ws.push_back(row);
  }
  Json checks = Json::array();
  for (const auto& c : em.checks) checks.push_back(Json{{"name", c.name}, {"passed", c.passed}});
  return Json{{"ws", ws},
              {"groups", groups_json(groups_of(ed))},
              {"two_group_mode", ed.two_group_mode},
              {"checks", checks}};
}

Json to_json(const RecoveryReport& report, bool full) {
  Json lambdas = Json::array();
  for (const auto& l : report.lambdas) lambdas.push_back(rational_vector(l));
  Json out{{"d", report.d}, {"g", report.g}, {"c", report.c}, {"n", report.ns}, {"lambdas", lambdas}};
  if (!full) return out;
  Json gammas = Json::array();
  for (const auto& g : report.gammas) gammas.push_back(rational_vector(g));
  Json log = Json::array();
  for (const auto& step : report.solve_log) {
    Json matrix = Json::array();
    for (const auto& row : step.matrix) matrix.push_back(rational_vector(row));
    Json entry{{"matrix", matrix}, {"rhs", rational_vector(step.rhs)}};
    entry["solution"] = step.solution.empty() ? Json(nullptr) : rational_vector(step.solution);
    log.push_back(entry);
  }
  out["branch"] = std::string(branch_name(report.branch));
  out["gammas"] = gammas;
  out["solve_log"] = log;
  return out;
}

Json to_json(const ZetaReport& report) {
  Json out{{"case", report.zeta_case == ZetaCase::A ? "A" : "B"},
           {"b", report.b},
           {"n", report.n.get_str()}};
  if (report.zeta_case == ZetaCase::B) {
    out["i0"] = report.i0;
    out["h_semigroup"] = report.h_semigroup;
  }
  out["zeta"] = Json{{"numerator", report.zeta.numerator}, {"denominator", report.zeta.denominator}};
  out["specialized"] = Json{{"numerator", report.specialized.numerator},
                            {"denominator", report.specialized.denominator}};
  out["identity_verified"] = report.identity_verified;
  return out;
}

Json to_json(const LatticeBasis& lattice) {
  Json basis = Json::array();
  for (std::size_t r = 0; r < lattice.basis.rows(); ++r) {
    Json row = Json::array();
    for (const auto& x : lattice.basis.row(r)) row.push_back(x.get_str());
    basis.push_back(row);
  }
  return Json{{"basis", basis}, {"scale", lattice.scale.get_str()}};
}

std::string format_series(const CyclotomicRational& cr) {
  std::string num = product(cr.numerator);
  std::string den = product(cr.denominator);
  if (cr.denominator.empty()) return num;
  if (cr.denominator.size() > 1) den = "(" + den + ")";
  return num + " / " + den;
}

}  // namespace qoi
