#pragma once

#include <cstddef>

#include "parcon/errors.hpp"
#include "parcon/series.hpp"

namespace parcon {

/// Asymptotic integration hit the pseudo-gap of the field.
class PseudoGapError : public Error {
 public:
  explicit PseudoGapError(Exponent obstruction);
  const Exponent& obstruction() const noexcept { return obstruction_; }

 private:
  Exponent obstruction_;
};

// Standard derivation: d/dx on x^e, and on log monomials
// (l_0^a0 ... l_n^an)' = m * sum_k a_k / (l_0 ... l_k).
Series derive(const Series& f);

// f' / f.
Series log_derivative(const Series& f);

// [[f, g]] = f g' - f' g.
Series lie_bracket(const Series& f, const Series& g);

// f d/dx is contracting, i.e. f = 0 or f ≺ x (in both fields min Ψ = v(1/x)).
bool is_contracting(const Series& f);

struct AsymptoticIntegral {
  Term term;
  // Log depth of the field the integral lives in.
  std::size_t depth = 0;
  // True when the integral needed one more log level than was available.
  bool extended = false;
};

/// A single term τ with τ' ∼ f.
///
/// In the rational field the only obstruction is lead(f) ≍ 1/x. In the
/// log-lex field at ambient depth n (the maximum of the context depth, the
/// depth of f and `ambient_depth`) the obstruction is 1/(l_0 ... l_n), which
/// an extendable context integrates to c*l_{n+1}.
AsymptoticIntegral asymptotic_integral(const Series& f, std::size_t ambient_depth = 0);

}  // namespace parcon
