#pragma once
// Curve-spec documents, the command-line form grammar, and the canonical
// JSON serialization used by reports and golden files.

#include <string>

#include "adelic/adele.hpp"
#include "json.hpp"

namespace adelic {

using Json = nlohmann::ordered_json;

// { "characteristic": 0 | p, "model": "P1" | {"hyperelliptic_f": [c0, c1, ...]} }
// with coefficients as decimal strings (characteristic 0) or integers mod p
CurvePtr parse_curve_spec(const Json& doc);
CurvePtr parse_curve_spec_text(const std::string& text);
CurvePtr load_curve_spec(const std::string& path);
// canonical echo of a curve, in the same document format
Json curve_spec_document(const CurvePtr& C);

// multiplier g of a one-form g dx: integers, x, y, + - * /, parentheses
FFElt parse_form(const CurvePtr& C, const std::string& text);

Json serialize_scalar(const Scalar& s);
Json serialize_poly(const Poly& a);
Json serialize_rational_function(const RationalFunction& r);
Json serialize_ffelt(const FFElt& g);
Json serialize_series(const LaurentSeries& s);
// canonical adele document: generic/default rational parts as coefficient
// vectors, exceptions as (place id, min_exponent, precision, coefficients)
Json serialize_cochain(const Cochain& u);
Json serialize_degree1(const Degree1& u);

}  // namespace adelic
