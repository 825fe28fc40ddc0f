#pragma once

// JSON documents exchanged by the command-line tool. Rationals travel as
// "p/q" strings in lowest terms so nothing is lost in transit.

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qoi/charseq.hpp"
#include "qoi/essential.hpp"
#include "qoi/inverse.hpp"
#include "qoi/series.hpp"
#include "qoi/zeta.hpp"

namespace qoi {

using Json = nlohmann::ordered_json;

/// Input that is not a well-formed document (as opposed to a domain error).
class MalformedInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Accepts "p/q" with q > 1 and gcd(p, q) = 1, or a plain integer "p".
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& x);

CharacteristicSequence parse_charseq(const Json& doc);
/// Reads "shortform" and "cyclotomic" documents.
CyclotomicRational parse_series(const Json& doc);

Json to_json(const CharacteristicSequence& cs);
Json to_json(const CyclotomicRational& cr, bool short_form);
Json to_json(const TruncatedSeries& ts);
Json to_json(const EssentialDivisors& ed, const EssentialMatrix& em);
Json to_json(const RecoveryReport& report, bool full);
Json to_json(const ZetaReport& report);
Json to_json(const LatticeBasis& lattice);
Json rational_vector(std::span<const Rational> v);

/// (1 - t1^2 t2) / ((1 - t1)(1 - t2)) style rendering.
std::string format_series(const CyclotomicRational& cr);

}  // namespace qoi
