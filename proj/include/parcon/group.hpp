#pragma once

#include "parcon/series.hpp"

namespace parcon {

/// Element of Cont(∂): a series f with f ≺ x, so that f∂ is contracting.
/// The group law is ∗ (see star), the identity 0 and the inverse of f is -f.
class GroupElement {
 public:
  // Throws NotContractingError unless f ≺ x.
  explicit GroupElement(Series f);
  static GroupElement identity(const ContextPtr& ctx) { return GroupElement(Series::zero(ctx)); }

  const Series& series() const noexcept { return f_; }
  const ContextPtr& context() const noexcept { return f_.context(); }
  GroupElement operator-() const { return GroupElement(-f_); }

 private:
  Series f_;
};

/// A series x + δ with δ ≺ x.
class ParabolicSeries {
 public:
  // Throws NotParabolicError unless the input has the form x + δ, δ ≺ x.
  explicit ParabolicSeries(Series p);
  static ParabolicSeries identity(const ContextPtr& ctx) { return ParabolicSeries(Series::x(ctx)); }

  const Series& series() const noexcept { return p_; }
  const ContextPtr& context() const noexcept { return p_.context(); }
  Series delta() const;

 private:
  Series p_;
};

// exp(f∂)(a) = sum_k (f∂)^k(a) / k!, which equals a ∘ exp_map(f).
Series flow(const GroupElement& f, const Series& a);

// exp(ad_φ)(h) = sum_k [[φ, [[φ, ... h]]]] / k!.
Series adjoint_flow(const GroupElement& phi, const Series& h);

// exp(f∂)(x), iterated until the terms fall below the working cutoff.
ParabolicSeries exp_map(const GroupElement& f);

// Inverse of exp_map: h_{k+1} = h_k - (exp_map(h_k) - p), h_0 = p - x.
GroupElement log_map(const ParabolicSeries& p);

// g ∘ p by Taylor expansion sum_i g^(i) δ^i / i!, p = x + δ.
Series compose(const Series& g, const ParabolicSeries& p);
ParabolicSeries compose(const ParabolicSeries& p, const ParabolicSeries& q);

// Compositional inverse: q_{k+1} = x - (p - x) ∘ q_k.
ParabolicSeries invert_parabolic(const ParabolicSeries& p);

// f ∗ g = log_map(exp_map(g) ∘ exp_map(f)): the BCH law
// f + g + [[f,g]]/2 + ([[f,[[f,g]]]] - [[g,[[f,g]]]])/12 + ...
GroupElement star(const GroupElement& f, const GroupElement& g);

// The BCH partial sum through brackets of length 3.
Series bch_truncated(const GroupElement& f, const GroupElement& g);

// φ ∗ h ∗ (-φ), computed as exp(ad_φ)(h).
GroupElement group_conjugate(const GroupElement& phi, const GroupElement& h);

}  // namespace parcon
