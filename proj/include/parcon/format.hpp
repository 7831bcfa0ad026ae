#pragma once

#include <string>

#include <json.hpp>

#include "parcon/calculus.hpp"
#include "parcon/conjugacy.hpp"
#include "parcon/series.hpp"

namespace parcon {

using Json = nlohmann::ordered_json;

// "x + 1 + 3*x^(-1/2)"; a truncated series ends in " + O(m)" where m is the
// cutoff monomial. The text parses back to the same series.
std::string to_text(const Series& f);
std::string to_text(const Term& t);

Json to_json(const Exponent& e);
Json to_json(const Term& t);
// {"field": "k"|"tlog", "terms": [{"coeff": "p/q", "exponent": ...}], "cutoff": ...|null}
Json to_json(const Series& f);
Json to_json(const ConjugacyOutcome& o);
Json to_json(const PseudoGapError& e);

Exponent exponent_from_json(const Json& j, ExponentKind kind);
// Throws ContextMismatchError when the recorded field differs from ctx.
Series series_from_json(const Json& j, const ContextPtr& ctx);

std::string to_text(const ConjugacyOutcome& o);

}  // namespace parcon
