#include "parcon/calculus.hpp"

#include <algorithm>
#include <vector>

namespace parcon {

namespace {

// Exponent of 1/(l_0 ... l_k) in the given group.
Exponent inverse_log_product(ExponentKind kind, std::size_t k) {
  if (kind == ExponentKind::Rational) return Exponent::rational(-1);
  return Exponent::pseudo_gap(k);
}

}  // namespace

PseudoGapError::PseudoGapError(Exponent obstruction)
    : Error("asymptotic integration blocked at the pseudo-gap " + to_string(obstruction)),
      obstruction_(std::move(obstruction)) {}

Series derive(const Series& f) {
  const auto kind = f.field().exponent_kind();
  std::vector<Term> out;
  out.reserve(f.size() * 2);
  for (const auto& t : f.terms()) {
    const auto n = t.exponent.size();
    for (std::size_t k = 0; k < n; ++k) {
      if (t.exponent.coord_sign(k) == 0) continue;
      out.push_back(Term{t.coeff * t.exponent.coord(k), t.exponent + inverse_log_product(kind, k)});
    }
  }
  // Every monomial at or below the cutoff c differentiates to terms at or
  // below c - 1 (the k = 0 shift is the largest), so c - 1 is a valid cutoff.
  std::optional<Exponent> cut;
  if (f.cutoff()) cut = f.cutoff()->shifted(-1);
  return Series(f.context(), std::move(out), std::move(cut));
}

Series log_derivative(const Series& f) {
  if (f.is_exact_zero()) throw ZeroSeriesError("logarithmic derivative of zero");
  return mul(derive(f), invert_series(f));
}

Series lie_bracket(const Series& f, const Series& g) {
  require_same_field(f, g);
  return mul(f, derive(g)) - mul(derive(f), g);
}

bool is_contracting(const Series& f) {
  if (f.is_exact_zero()) return true;
  const auto x = Exponent::x(f.field().exponent_kind());
  if (!f.known_zero()) return lead_exponent(f) < x;
  if (*f.cutoff() < x) return true;
  throw PrecisionError("cannot decide contraction: series hidden below cutoff " + to_string(*f.cutoff()));
}

AsymptoticIntegral asymptotic_integral(const Series& f, std::size_t ambient_depth) {
  const Term l = lead(f);
  const FieldContext& field = f.field();
  const auto kind = field.exponent_kind();

  std::size_t depth = 0;
  if (field.kind == FieldKind::LogLex) depth = std::max({field.depth, f.depth(), ambient_depth});

  // First level k whose exponent is not -1; the monomial m*l_0...l_k then
  // differentiates to (a_k + 1) m + smaller terms.
  std::size_t k = 0;
  while (l.exponent.coord_is(k, -1)) ++k;
  bool extended = false;
  if (k > depth) {
    if (field.kind == FieldKind::RationalK || !field.extendable) throw PseudoGapError(l.exponent);
    extended = true;
    depth = k;
  }
  Term tau{l.coeff / (l.exponent.coord(k) + 1), l.exponent - inverse_log_product(kind, k)};
  return AsymptoticIntegral{std::move(tau), depth, extended};
}

}  // namespace parcon
