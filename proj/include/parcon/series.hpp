#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "parcon/context.hpp"
#include "parcon/exponent.hpp"
#include "parcon/rational.hpp"

namespace parcon {

struct Term {
  Rational coeff;
  Exponent exponent;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Truncated generalized power series with exact rational coefficients.
///
/// Terms are stored strictly decreasing in monomial size with no zero
/// coefficients. An optional cutoff marks the truncation: every stored
/// exponent lies strictly above it, and nothing is known about the
/// coefficients at or below it. A series without cutoff is exact (a finite
/// sum). The context is shared and immutable.
class Series {
 public:
  explicit Series(ContextPtr ctx);
  // Terms need not be sorted; duplicates are summed and zeros dropped.
  // Terms at or below the cutoff are discarded.
  Series(ContextPtr ctx, std::vector<Term> terms, std::optional<Exponent> cutoff = std::nullopt);

  static Series zero(const ContextPtr& ctx) { return Series(ctx); }
  static Series constant(const ContextPtr& ctx, const Rational& c);
  static Series monomial(const ContextPtr& ctx, const Rational& c, const Exponent& e);
  static Series term(const ContextPtr& ctx, const Term& t) { return monomial(ctx, t.coeff, t.exponent); }
  static Series x(const ContextPtr& ctx);

  const ContextPtr& context() const noexcept { return ctx_; }
  const FieldContext& field() const noexcept { return *ctx_; }
  std::span<const Term> terms() const noexcept { return terms_; }
  const std::optional<Exponent>& cutoff() const noexcept { return cutoff_; }
  std::size_t size() const noexcept { return terms_.size(); }

  bool is_exact() const noexcept { return !cutoff_.has_value(); }
  // No term is known above the cutoff (or the series is exactly 0).
  bool known_zero() const noexcept { return terms_.empty(); }
  bool is_exact_zero() const noexcept { return terms_.empty() && !cutoff_; }
  // Largest log level mentioned by any term.
  std::size_t depth() const noexcept;
  // Coefficient of the given monomial; precision error if at/below cutoff.
  Rational coefficient(const Exponent& e) const;

  Series operator-() const;
  Series& operator+=(const Series& other);
  Series& operator-=(const Series& other);
  Series& operator*=(const Series& other);

  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(const Series& a, const Series& b);

  Series scaled(const Rational& c) const&;
  Series scaled(const Rational& c) &&;
  // Multiplies by the monomial c * m_e (exact, shifts the cutoff).
  Series times_term(const Term& t) const;

  // Same terms and same cutoff.
  friend bool operator==(const Series& a, const Series& b);

 private:
  friend class SeriesAccess;
  ContextPtr ctx_;
  std::vector<Term> terms_;
  std::optional<Exponent> cutoff_;
};

// Coarser (larger) of two optional cutoffs; nullopt means exact.
std::optional<Exponent> coarser(const std::optional<Exponent>& a, const std::optional<Exponent>& b);

Series add(const Series& f, const Series& g);
Series mul(const Series& f, const Series& g);
// Product with every term at or below `cut` dropped. The result cutoff is
// the coarser of `cut` (if anything was dropped) and the propagated one.
Series mul_truncated(const Series& f, const Series& g, const Exponent& cut);
// f^-1 = c^-1 m^-1 sum_k (-eps)^k for f = c m (1 + eps), to the working cutoff.
Series invert_series(const Series& f);
Series divide(const Series& f, const Series& g);
// Steps k until start + k*step lies at or below cut, for a decreasing step.
// nullopt when that never happens, e.g. a step of log(x)^-1 against x^-40.
std::optional<std::size_t> steps_to_cutoff(const Exponent& start, const Exponent& step, const Exponent& cut);
// Throws IterationLimitError when powers of eps (eps ≺ 1) never pass cut.
void require_powers_reach(const Series& eps, const Exponent& cut, const char* what);
// f^n, n integer.
Series power(const Series& f, long n);

Term lead(const Series& f);
Exponent lead_exponent(const Series& f);

enum class Dominance { Smaller, Comparable, Larger };
const char* to_string(Dominance d);

// f ≺ g, f ≍ g, f ≻ g. Zero is ≺ every nonzero series.
Dominance dominance(const Series& f, const Series& g);
bool strictly_smaller(const Series& f, const Series& g);
// f ∼ g: same leading term (both nonzero).
bool asymptotic(const Series& f, const Series& g);

// Drops terms at or below new_cutoff. Refining an existing cutoff throws.
Series truncate(const Series& f, const Exponent& new_cutoff);
// f - g has no term above the combined cutoff.
bool equal_to_cutoff(const Series& f, const Series& g);

void require_same_field(const Series& f, const Series& g);

}  // namespace parcon
