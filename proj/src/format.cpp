#include "parcon/format.hpp"

#include <sstream>

#include "parcon/errors.hpp"
#include "parcon/group.hpp"

namespace parcon {

namespace {

std::string body(const Rational& a, const Exponent& e) {
  if (e.is_zero()) return to_string(a);
  if (a == 1) return to_string(e);
  return to_string(a) + "*" + to_string(e);
}

}  // namespace

std::string to_text(const Term& t) {
  if (sgn(t.coeff) < 0) return "-" + body(-t.coeff, t.exponent);
  return body(t.coeff, t.exponent);
}

std::string to_text(const Series& f) {
  std::string out;
  for (const auto& t : f.terms()) {
    const bool neg = sgn(t.coeff) < 0;
    const std::string b = body(neg ? Rational(-t.coeff) : t.coeff, t.exponent);
    if (out.empty())
      out = neg ? "-" + b : b;
    else
      out += (neg ? " - " : " + ") + b;
  }
  if (f.cutoff()) {
    const std::string o = "O(" + to_string(*f.cutoff()) + ")";
    out = out.empty() ? o : out + " + " + o;
  }
  return out.empty() ? "0" : out;
}

Json to_json(const Exponent& e) {
  if (e.kind() == ExponentKind::Rational) return to_string(e.value());
  Json a = Json::array();
  for (const auto& c : e.coords()) a.push_back(to_string(c));
  return a;
}

Json to_json(const Term& t) {
  return Json{{"coeff", to_string(t.coeff)}, {"exponent", to_json(t.exponent)}, {"text", to_text(t)}};
}

Json to_json(const Series& f) {
  Json terms = Json::array();
  for (const auto& t : f.terms()) terms.push_back(Json{{"coeff", to_string(t.coeff)}, {"exponent", to_json(t.exponent)}});
  Json j;
  j["field"] = to_string(f.field().kind);
  j["terms"] = std::move(terms);
  j["cutoff"] = f.cutoff() ? to_json(*f.cutoff()) : Json(nullptr);
  return j;
}

Json to_json(const PseudoGapError& e) {
  return Json{{"error", "pseudo-gap"}, {"obstruction", to_string(e.obstruction())}, {"exponent", to_json(e.obstruction())}};
}

Json to_json(const ConjugacyOutcome& o) {
  Json j;
  j["verdict"] = to_string(o.verdict);
  j["witness"] = o.witness ? to_json(o.witness->series()) : Json(nullptr);
  j["witness_parabolic"] = o.witness_parabolic ? to_json(o.witness_parabolic->series()) : Json(nullptr);
  if (o.obstruction)
    j["obstruction"] = Json{{"exponent", to_json(*o.obstruction)}, {"monomial", to_string(*o.obstruction)}};
  else
    j["obstruction"] = nullptr;
  j["obstruction_kind"] = to_string(o.obstruction_kind);
  Json trace = Json::array();
  for (const auto& s : o.trace)
    trace.push_back(Json{{"step", s.index}, {"residual", to_json(s.residual)}, {"correction", to_json(s.correction)}});
  j["trace"] = std::move(trace);
  j["input_depth"] = o.input_depth;
  j["depth"] = o.depth;
  return j;
}

std::string to_text(const ConjugacyOutcome& o) {
  std::ostringstream out;
  out << "verdict: " << to_string(o.verdict) << "\n";
  if (o.witness) out << "witness: " << to_text(o.witness->series()) << "\n";
  if (o.witness_parabolic) out << "witness (parabolic): " << to_text(o.witness_parabolic->series()) << "\n";
  if (o.obstruction)
    out << "obstruction: " << to_string(*o.obstruction) << " (exponent " << to_json(*o.obstruction).dump() << ", "
        << to_string(o.obstruction_kind) << ")\n";
  if (o.depth != o.input_depth) out << "depth: " << o.input_depth << " -> " << o.depth << "\n";
  out << "trace:";
  if (o.trace.empty()) out << " (empty)";
  out << "\n";
  for (const auto& s : o.trace)
    out << "  " << s.index << ": residual " << to_text(s.residual) << ", correction " << to_text(s.correction) << "\n";
  return out.str();
}

Exponent exponent_from_json(const Json& j, ExponentKind kind) {
  try {
    if (kind == ExponentKind::Rational) return Exponent::rational(parse_rational(j.get<std::string>()));
    std::vector<Rational> coords;
    for (const auto& c : j) coords.push_back(parse_rational(c.get<std::string>()));
    return Exponent::loglex(std::move(coords));
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad exponent in JSON: ") + e.what(), 0, {"exponent"});
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("bad exponent in JSON: ") + e.what(), 0, {"rational"});
  }
}

Series series_from_json(const Json& j, const ContextPtr& ctx) {
  try {
    if (j.at("field").get<std::string>() != to_string(ctx->kind))
      throw ContextMismatchError("JSON series is over field '" + j.at("field").get<std::string>() + "'");
    const auto kind = ctx->exponent_kind();
    std::vector<Term> terms;
    for (const auto& t : j.at("terms"))
      terms.push_back(Term{parse_rational(t.at("coeff").get<std::string>()), exponent_from_json(t.at("exponent"), kind)});
    std::optional<Exponent> cut;
    if (j.contains("cutoff") && !j.at("cutoff").is_null()) cut = exponent_from_json(j.at("cutoff"), kind);
    return Series(ctx, std::move(terms), std::move(cut));
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad series JSON: ") + e.what(), 0, {"series object"});
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("bad series JSON: ") + e.what(), 0, {"rational"});
  }
}

}  // namespace parcon
