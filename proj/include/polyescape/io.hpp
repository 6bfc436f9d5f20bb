#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "polyescape/algebraic.hpp"
#include "polyescape/escape.hpp"
#include "polyescape/spectral.hpp"

namespace polyescape {

using Json = nlohmann::ordered_json;

/// Instance document:
///   {"dimension": d,
///    "dynamics": {"A": [[...]], "a": [...]},
///    "polytope": {"strict": {"B": [[...]], "b": [...]},
///                 "nonstrict": {"B": [[...]], "b": [...]}}}
/// Scalars are "p/q" or "p" strings (JSON integers are also accepted).
/// Throws std::invalid_argument on malformed or inconsistent input.
EscapeInstance parse_instance(const Json& doc);
EscapeInstance parse_instance_text(const std::string& text);
Json instance_to_json(const EscapeInstance& inst);
/// Square matrix of rational strings.
RationalMatrix parse_square_matrix(const Json& j);

Json algebraic_to_json(const AlgebraicNumber& a);
AlgebraicNumber algebraic_from_json(const Json& j);
/// Rationals as strings, irrationals as {minpoly, approx, radius}.
Json coordinate_to_json(const AlgebraicNumber& a);
AlgebraicNumber coordinate_from_json(const Json& j);
/// Real part (and imaginary part when non-real) to 12 fractional digits.
std::string decimal(const AlgebraicNumber& a, int digits = 12);

struct VerdictJsonOptions {
  bool certificate = true;
  bool timings = true;
};
Json verdict_to_json(const Verdict& v, const VerdictJsonOptions& options = {});
Json witness_to_json(const Witness& w);
/// Accepts a witness object, a verdict document, or a bare coordinate list.
std::vector<AlgebraicNumber> witness_point_from_json(const Json& j);

Json spectrum_to_json(const SpectralData& s, const std::vector<RationalVector>& observables = {});

}  // namespace polyescape
