#include "parcon/group.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "parcon/calculus.hpp"
#include "parcon/errors.hpp"

namespace parcon {

namespace {

Series coarsen(const Series& s, const Exponent& cut) {
  if (s.cutoff() && *s.cutoff() >= cut) return s;
  return truncate(s, cut);
}

// Steps after which terms bounded by start + k*(lf - x) lie below `cut`.
// When the first coordinate that shrinks cannot reach the cutoff the terms
// never fall below it; a short allowance still lets finite sums finish.
constexpr std::size_t kUnreachable = 16;

std::size_t step_bound(const Exponent& start, const Exponent& lf, const Exponent& cut) {
  const Exponent gain = Exponent::x(start.kind()) - lf;
  std::size_t j = 0;
  while (j < gain.size() && gain.coord_sign(j) == 0) ++j;
  if (j == gain.size()) return kUnreachable;
  for (std::size_t i = 0; i < j; ++i) {
    const int c = cmp(start.coord(i), cut.coord(i));
    if (c < 0) return 2;
    if (c > 0) return kUnreachable;
  }
  const Rational gap = start.coord(j) - cut.coord(j);
  if (sgn(gap) < 0) return 2;
  const Rational steps = gap / gain.coord(j);
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), steps.get_num_mpz_t(), steps.get_den_mpz_t());
  return q.get_ui() + 3;
}

void check_iter(std::size_t k, std::size_t bound, const FieldContext& field, const char* what) {
  if (k >= field.max_iter) throw IterationLimitError(std::string(what) + ": iteration limit reached");
  if (bound && k > bound)
    throw IterationLimitError(std::string(what) + ": terms do not reach the working cutoff " +
                              to_string(field.cutoff) + " (contraction too weak at this cutoff)");
}

// Sum_k c_k D^k(a)/k! where D(t) = step(t); stops once a term is known zero.
template <class Step, class Coeff>
Series operator_series(const Series& a, const Series& f, Step step, Coeff coeff, const char* what) {
  const auto& field = a.field();
  std::size_t bound = 0;
  if (!f.known_zero() && !a.known_zero()) bound = step_bound(lead_exponent(a), lead_exponent(f), field.cutoff);
  Series sum = a.scaled(coeff(0));
  Series t = a;
  for (std::size_t k = 1;; ++k) {
    check_iter(k, bound, field, what);
    t = step(t).scaled(Rational(1, k));
    if (const Rational c = coeff(k); c == 1)
      sum += t;
    else if (sgn(c) != 0)
      sum += t.scaled(c);
    if (t.known_zero()) break;
  }
  return sum;
}

Rational one(std::size_t) { return 1; }

// B_0, B_1, ... with B_1 = -1/2, extended on demand.
class Bernoulli {
 public:
  const Rational& operator()(std::size_t m) {
    while (b_.size() <= m) {
      const std::size_t n = b_.size();
      // sum_{j<=n} C(n+1, j) B_j = 0
      Rational acc = 0;
      mpz_class c = 1;
      for (std::size_t j = 0; j < n; ++j) {
        acc += c * b_[j];
        c = c * static_cast<unsigned long>(n + 1 - j) / static_cast<unsigned long>(j + 1);
      }
      b_.push_back(-acc / Rational(c));
    }
    return b_[m];
  }

 private:
  std::vector<Rational> b_{Rational(1)};
};

Series ad_step(const Series& h, const Series& dh, const Series& t, const Exponent& w) {
  return mul_truncated(h, derive(t), w) - mul_truncated(dh, t, w);
}

// y∂(t), or [[y, t]] = y t' - y' t when `bracket`, for a single exact term
// y, in one pass over t. Terms at or below w are dropped.
Series monomial_field(const Term& y, const Series& t, const Exponent& w, bool bracket) {
  const auto kind = t.field().exponent_kind();
  const Exponent& a = y.exponent;
  std::vector<Term> out;
  out.reserve(t.size());
  bool dropped = false;
  for (const auto& u : t.terms()) {
    const Exponent base = u.exponent + a;
    if (base.shifted(-1) <= w) {
      dropped = true;
      break;
    }
    const std::size_t n = std::max(u.exponent.size(), bracket ? a.size() : 0);
    for (std::size_t k = 0; k < n; ++k) {
      Rational c = u.exponent.coord(k);
      if (bracket) c -= a.coord(k);
      if (sgn(c) == 0) continue;
      Exponent e = base + (kind == ExponentKind::Rational ? Exponent::rational(-1) : Exponent::pseudo_gap(k));
      if (e <= w) {
        dropped = true;
        continue;
      }
      c *= y.coeff;
      out.push_back(Term{u.coeff * c, std::move(e)});
    }
  }
  std::optional<Exponent> cut;
  if (t.cutoff()) cut = (*t.cutoff() + a).shifted(-1);
  if (dropped && (!cut || *cut < w)) cut = w;
  return Series(t.context(), std::move(out), std::move(cut));
}

const Term* single_term(const Series& f) { return f.is_exact() && f.size() == 1 ? &f.terms().front() : nullptr; }

}  // namespace

GroupElement::GroupElement(Series f) : f_(std::move(f)) {
  if (!is_contracting(f_)) throw NotContractingError("series is not contracting (needs f ≺ x)");
}

ParabolicSeries::ParabolicSeries(Series p) : p_(std::move(p)) {
  const Series d = p_ - Series::x(p_.context());
  if (!is_contracting(d)) throw NotParabolicError("series is not of the form x + δ with δ ≺ x");
}

Series ParabolicSeries::delta() const { return p_ - Series::x(p_.context()); }

Series flow(const GroupElement& f, const Series& a) {
  require_same_field(f.series(), a);
  if (f.series().is_exact_zero()) return a;
  const Exponent& w = a.field().cutoff;
  if (const Term* y = single_term(f.series()))
    return operator_series(a, f.series(), [&](const Series& t) { return monomial_field(*y, t, w, false); }, one, "flow");
  return operator_series(
      a, f.series(), [&](const Series& t) { return mul_truncated(f.series(), derive(t), w); }, one, "flow");
}

Series adjoint_flow(const GroupElement& phi, const Series& h) {
  require_same_field(phi.series(), h);
  if (phi.series().is_exact_zero()) return h;
  const Series& p = phi.series();
  const Exponent& w = h.field().cutoff;
  if (const Term* y = single_term(p))
    return operator_series(h, p, [&](const Series& t) { return monomial_field(*y, t, w, true); }, one, "adjoint_flow");
  const Series dp = derive(p);
  return operator_series(h, p, [&](const Series& t) { return ad_step(p, dp, t, w); }, one, "adjoint_flow");
}

ParabolicSeries exp_map(const GroupElement& f) { return ParabolicSeries(flow(f, Series::x(f.context()))); }

// Working cutoffs from coarse to `cut`, halving the x exponent. Only pure
// x-power cutoffs get a ladder.
std::vector<Exponent> precision_ladder(const Exponent& lead, const Exponent& cut) {
  std::vector<Exponent> out{cut};
  if (cut.size() != 1 || cut.coord_sign(0) >= 0) return out;
  const Rational floor = lead.coord(0) - 2;
  for (;;) {
    const Exponent next = out.back().scaled(Rational(1, 2));
    if (!(next.coord(0) < floor) || next.coord(0) > -2) break;
    out.push_back(next);
  }
  return {out.rbegin(), out.rend()};
}

Series at_cutoff(const Series& f, const ContextPtr& ctx) {
  std::optional<Exponent> cut = f.cutoff();
  if (!cut || *cut < ctx->cutoff) cut = ctx->cutoff;
  std::vector<Term> kept;
  for (const auto& t : f.terms())
    if (t.exponent > *cut) kept.push_back(t);
  return Series(ctx, std::move(kept), f.is_exact() && kept.size() == f.size() ? f.cutoff() : cut);
}

// 1/f good enough to multiply any residual r ≺ x without losing precision:
// the plain inverse only reaches cutoff + lead(f), which is far too coarse
// once the cutoff carries log coordinates.
Series inverse_for_residuals(const Series& f, const Exponent& cut) {
  const ContextPtr fine = with_cutoff(f.context(), cut.shifted(-1));
  return invert_series(Series(fine, std::vector<Term>(f.terms().begin(), f.terms().end()), f.cutoff()));
}

// Newton iteration. The differential of exp_map at h is
//   e -> u * exp_map(h)',  u = sum_m ad_h^m(e) / (m+1)!,
// inverted with the Bernoulli series e = sum_m B_m ad_h^m(u) / m!.
// exp_map(h)' is replaced by p', which only costs a second-order term.
// Early steps run at coarser cutoffs since each step roughly doubles the
// number of correct terms.
GroupElement log_map(const ParabolicSeries& p) {
  const auto& ctx = p.context();
  Series h = p.delta();
  if (h.known_zero()) return GroupElement(h);
  Bernoulli bernoulli;
  for (const auto& level : precision_ladder(lead_exponent(h), ctx->cutoff)) {
    const ContextPtr lc = level == ctx->cutoff ? ctx : with_cutoff(ctx, level);
    const Series pl = at_cutoff(p.series(), lc);
    const Series inv_dp = inverse_for_residuals(derive(pl), level);
    // The previous level's result seeds this one as an exact approximant.
    h = Series(lc, std::vector<Term>(h.terms().begin(), h.terms().end()));
    for (std::size_t k = 0;; ++k) {
      check_iter(k, 0, *lc, "log_map");
      const Series r = exp_map(GroupElement(h)).series() - pl;
      if (r.known_zero()) {
        h -= r;
        break;
      }
      const Series u = mul_truncated(r, inv_dp, level);
      const Series dh = derive(h);
      h -= operator_series(u, h, [&](const Series& t) { return ad_step(h, dh, t, level); }, bernoulli, "log_map");
    }
  }
  return GroupElement(h);
}

Series compose(const Series& g, const ParabolicSeries& p) {
  require_same_field(g, p.series());
  const Series delta = p.delta();
  if (delta.is_exact_zero() || g.known_zero()) return g;
  const auto& field = g.field();
  const Exponent& w = field.cutoff;
  Series d = derive(g);
  if (delta.known_zero()) return g + mul(d, delta);

  const Exponent eg = lead_exponent(g);
  const Exponent vd = lead_exponent(delta);
  // Term i is at most eg + i*(vd - x).
  const std::size_t bound = step_bound(eg, vd, w);
  Series result = g;
  Series q = Series::constant(g.context(), 1);
  Rational factorial = 1;
  for (std::size_t i = 1;; ++i) {
    check_iter(i, bound, field, "compose");
    if (i > 1) d = derive(d);
    if (d.is_exact_zero()) break;
    // g^(i) ≼ x^-i g, so delta^i is only needed above w - eg + i.
    const Exponent qcut = w - eg.shifted(-Rational(static_cast<long>(i)));
    q = mul_truncated(q, delta, qcut);
    factorial *= static_cast<long>(i);
    result += mul_truncated(d, q, w).scaled(1 / factorial);
    if (q.known_zero()) break;
    const Exponent next = eg.shifted(-Rational(static_cast<long>(i + 1))) + vd.scaled(static_cast<long>(i + 1));
    if (next <= w) {
      result = coarsen(result, w);
      break;
    }
  }
  return result;
}

ParabolicSeries compose(const ParabolicSeries& p, const ParabolicSeries& q) {
  return ParabolicSeries(compose(p.series(), q));
}

// Newton: q <- q - (p∘q - x) / (p'∘q), starting from x - δ.
ParabolicSeries invert_parabolic(const ParabolicSeries& p) {
  const Series delta = p.delta();
  if (delta.is_exact_zero()) return p;
  const auto& field = p.series().field();
  const Series x = Series::x(p.context());
  const Series dp = derive(p.series());
  Series q = x - delta;
  for (std::size_t k = 0;; ++k) {
    check_iter(k, 0, field, "invert_parabolic");
    const ParabolicSeries pq(q);
    const Series r = compose(p.series(), pq) - x;
    if (r.known_zero()) {
      q -= r;
      return ParabolicSeries(q);
    }
    const ContextPtr fine = with_cutoff(p.context(), field.cutoff.shifted(-1));
    const auto rebase = [&](const Series& f) { return Series(fine, std::vector<Term>(f.terms().begin(), f.terms().end()), f.cutoff()); };
    const Series dq = compose(rebase(dp), ParabolicSeries(rebase(q)));
    q -= mul_truncated(r, inverse_for_residuals(dq, field.cutoff), field.cutoff);
  }
}

GroupElement star(const GroupElement& f, const GroupElement& g) {
  require_same_field(f.series(), g.series());
  if (f.series().is_exact_zero()) return g;
  if (g.series().is_exact_zero()) return f;
  return log_map(ParabolicSeries(compose(exp_map(g).series(), exp_map(f))));
}

Series bch_truncated(const GroupElement& f, const GroupElement& g) {
  const Series& a = f.series();
  const Series& b = g.series();
  const Series ab = lie_bracket(a, b);
  return a + b + ab.scaled(Rational(1, 2)) + (lie_bracket(a, ab) - lie_bracket(b, ab)).scaled(Rational(1, 12));
}

GroupElement group_conjugate(const GroupElement& phi, const GroupElement& h) {
  return GroupElement(adjoint_flow(phi, h.series()));
}

}  // namespace parcon
