#include "parcon/series.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <utility>

#include "parcon/errors.hpp"

namespace parcon {

namespace {

bool above(const Exponent& e, const std::optional<Exponent>& cut) { return !cut || e > *cut; }

// Sorts decreasing, sums equal exponents, drops zeros and terms at/below cut.
void normalize_terms(std::vector<Term>& terms, const std::optional<Exponent>& cut) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.exponent > b.exponent; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i + 1;
    Rational sum = std::move(terms[i].coeff);
    while (j < terms.size() && terms[j].exponent == terms[i].exponent) sum += terms[j++].coeff;
    if (sgn(sum) != 0 && above(terms[i].exponent, cut)) {
      if (out != i) terms[out].exponent = std::move(terms[i].exponent);
      terms[out].coeff = std::move(sum);
      ++out;
    }
    i = j;
  }
  terms.resize(out);
}

}  // namespace

// Grants the free functions in this file direct access to the representation.
class SeriesAccess {
 public:
  static Series make(ContextPtr ctx, std::vector<Term> sorted_terms, std::optional<Exponent> cutoff) {
    Series s(std::move(ctx));
    s.terms_ = std::move(sorted_terms);
    s.cutoff_ = std::move(cutoff);
    return s;
  }
};

std::optional<Exponent> coarser(const std::optional<Exponent>& a, const std::optional<Exponent>& b) {
  if (!a) return b;
  if (!b) return a;
  return *a >= *b ? a : b;
}

Series::Series(ContextPtr ctx) : ctx_(std::move(ctx)) {
  if (!ctx_) throw std::invalid_argument("series needs a field context");
}

Series::Series(ContextPtr ctx, std::vector<Term> terms, std::optional<Exponent> cutoff)
    : ctx_(std::move(ctx)), terms_(std::move(terms)), cutoff_(std::move(cutoff)) {
  if (!ctx_) throw std::invalid_argument("series needs a field context");
  const auto kind = ctx_->exponent_kind();
  if (cutoff_ && cutoff_->kind() != kind) throw ContextMismatchError("cutoff kind does not match field");
  for (const auto& t : terms_)
    if (t.exponent.kind() != kind) throw ContextMismatchError("term exponent kind does not match field");
  normalize_terms(terms_, cutoff_);
}

Series Series::constant(const ContextPtr& ctx, const Rational& c) {
  return monomial(ctx, c, Exponent::zero(ctx->exponent_kind()));
}

Series Series::monomial(const ContextPtr& ctx, const Rational& c, const Exponent& e) {
  if (sgn(c) == 0) return Series(ctx);
  return Series(ctx, {Term{c, e}});
}

Series Series::x(const ContextPtr& ctx) { return monomial(ctx, 1, Exponent::x(ctx->exponent_kind())); }

std::size_t Series::depth() const noexcept {
  std::size_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.exponent.depth());
  return d;
}

Rational Series::coefficient(const Exponent& e) const {
  if (!above(e, cutoff_)) throw PrecisionError("coefficient of " + to_string(e) + " lies below the cutoff");
  for (const auto& t : terms_)
    if (t.exponent == e) return t.coeff;
  return 0;
}

Series Series::operator-() const {
  Series s(*this);
  for (auto& t : s.terms_) t.coeff = -t.coeff;
  return s;
}

void require_same_field(const Series& f, const Series& g) {
  if (f.field().kind != g.field().kind)
    throw ContextMismatchError(std::string("series from different fields: ") + to_string(f.field().kind) +
                               " vs " + to_string(g.field().kind));
}

Series add(const Series& f, const Series& g) {
  require_same_field(f, g);
  auto cut = coarser(f.cutoff(), g.cutoff());
  std::vector<Term> out;
  out.reserve(f.size() + g.size());
  auto a = f.terms().begin(), ae = f.terms().end();
  auto b = g.terms().begin(), be = g.terms().end();
  while (a != ae || b != be) {
    if (b == be || (a != ae && a->exponent > b->exponent)) {
      if (above(a->exponent, cut)) out.push_back(*a);
      ++a;
    } else if (a == ae || b->exponent > a->exponent) {
      if (above(b->exponent, cut)) out.push_back(*b);
      ++b;
    } else {
      Rational c = a->coeff + b->coeff;
      if (sgn(c) != 0 && above(a->exponent, cut)) out.push_back(Term{std::move(c), a->exponent});
      ++a;
      ++b;
    }
  }
  return SeriesAccess::make(f.context(), std::move(out), std::move(cut));
}

Series& Series::operator+=(const Series& other) { return *this = add(*this, other); }

Series& Series::operator-=(const Series& other) { return *this = add(*this, -other); }

namespace {

// Cutoff below which the product f*g is undetermined by the inputs.
std::optional<Exponent> propagated_cutoff(const Series& f, const Series& g) {
  std::optional<Exponent> cut;
  if (g.cutoff() && !f.known_zero()) cut = coarser(cut, f.terms().front().exponent + *g.cutoff());
  if (f.cutoff() && !g.known_zero()) cut = coarser(cut, g.terms().front().exponent + *f.cutoff());
  if (f.cutoff() && g.cutoff()) cut = coarser(cut, *f.cutoff() + *g.cutoff());
  return cut;
}

// Coefficients of f as integers over one common denominator.
struct Scaled {
  std::vector<mpz_class> num;
  mpz_class den = 1;
};

Scaled common_denominator(const Series& f) {
  Scaled s;
  // Deep terms carry the largest denominators; once those are in, the
  // shallower ones usually divide the lcm and need no gcd.
  const auto terms = f.terms();
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const mpz_class& d = it->coeff.get_den();
    if (!mpz_divisible_p(s.den.get_mpz_t(), d.get_mpz_t())) mpz_lcm(s.den.get_mpz_t(), s.den.get_mpz_t(), d.get_mpz_t());
  }
  s.num.reserve(f.size());
  for (const auto& t : f.terms()) {
    mpz_class n;
    mpz_divexact(n.get_mpz_t(), s.den.get_mpz_t(), t.coeff.get_den_mpz_t());
    n *= t.coeff.get_num();
    s.num.push_back(std::move(n));
  }
  return s;
}

// g * t for a single exact term t.
Series by_term(const Series& g, const Term& t, const std::optional<Exponent>& unknown,
               const std::optional<Exponent>& cut) {
  const auto threshold = coarser(unknown, cut);
  std::vector<Term> out;
  out.reserve(g.size());
  bool dropped = false;
  for (const auto& u : g.terms()) {
    Exponent e = u.exponent + t.exponent;
    if (!above(e, threshold)) {
      if (cut && !above(e, cut)) dropped = true;
      break;
    }
    out.push_back(Term{u.coeff * t.coeff, std::move(e)});
  }
  return SeriesAccess::make(g.context(), std::move(out), coarser(unknown, dropped ? cut : std::nullopt));
}

// Products are summed per exponent with integer multiply-adds in a hash
// table; only the distinct exponents are sorted, and each output
// coefficient is reduced once.
Series multiply(const Series& f, const Series& g, const std::optional<Exponent>& cut) {
  require_same_field(f, g);
  // 0 * anything is exactly 0.
  if (f.is_exact_zero() || g.is_exact_zero()) return Series(f.context());
  const auto unknown = propagated_cutoff(f, g);
  const auto threshold = coarser(unknown, cut);
  if (f.is_exact() && f.size() == 1) return by_term(g, f.terms().front(), unknown, cut);
  if (g.is_exact() && g.size() == 1) return by_term(f, g.terms().front(), unknown, cut);
  bool dropped = false;
  const auto ft = f.terms();
  const auto gt = g.terms();
  const Scaled fs = common_denominator(f);
  const Scaled gs = common_denominator(g);
  std::unordered_map<Exponent, std::size_t, ExponentHash> slot;
  std::vector<Exponent> exps;
  std::vector<mpz_class> sums;
  for (std::size_t i = 0; i < ft.size(); ++i) {
    for (std::size_t j = 0; j < gt.size(); ++j) {
      Exponent e = ft[i].exponent + gt[j].exponent;
      if (!above(e, threshold)) {
        if (cut && !above(e, cut)) dropped = true;
        break;  // g is decreasing, so the rest of this row is lower still
      }
      auto [it, fresh] = slot.try_emplace(e, exps.size());
      if (fresh) {
        exps.push_back(std::move(e));
        sums.emplace_back();
      }
      mpz_addmul(sums[it->second].get_mpz_t(), fs.num[i].get_mpz_t(), gs.num[j].get_mpz_t());
    }
  }
  std::vector<std::size_t> order(exps.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return exps[a] > exps[b]; });
  const mpz_class den = fs.den * gs.den;
  std::vector<Term> out;
  out.reserve(order.size());
  for (const std::size_t k : order) {
    if (sgn(sums[k]) == 0) continue;
    Rational c(sums[k], den);
    c.canonicalize();
    out.push_back(Term{std::move(c), std::move(exps[k])});
  }
  auto result_cut = coarser(unknown, dropped ? cut : std::nullopt);
  return SeriesAccess::make(f.context(), std::move(out), std::move(result_cut));
}

}  // namespace

Series mul(const Series& f, const Series& g) { return multiply(f, g, std::nullopt); }

Series mul_truncated(const Series& f, const Series& g, const Exponent& cut) { return multiply(f, g, cut); }

Series operator*(const Series& a, const Series& b) { return mul(a, b); }

Series& Series::operator*=(const Series& other) { return *this = mul(*this, other); }

Series Series::scaled(const Rational& c) const& { return Series(*this).scaled(c); }

Series Series::scaled(const Rational& c) && {
  if (sgn(c) == 0) return Series(ctx_);
  if (c != 1)
    for (auto& t : terms_) t.coeff *= c;
  return std::move(*this);
}

Series Series::times_term(const Term& t) const {
  if (t.exponent.kind() != ctx_->exponent_kind()) throw ContextMismatchError("term kind does not match field");
  if (sgn(t.coeff) == 0) return Series(ctx_);
  Series s(*this);
  for (auto& u : s.terms_) {
    u.coeff *= t.coeff;
    u.exponent += t.exponent;
  }
  if (s.cutoff_) *s.cutoff_ += t.exponent;
  return s;
}

bool operator==(const Series& a, const Series& b) {
  return a.field().kind == b.field().kind && a.terms_ == b.terms_ && a.cutoff_ == b.cutoff_;
}

Term lead(const Series& f) {
  if (!f.known_zero()) return f.terms().front();
  if (f.is_exact()) throw ZeroSeriesError("leading term of the zero series");
  throw PrecisionError("leading term hidden below cutoff " + to_string(*f.cutoff()));
}

Exponent lead_exponent(const Series& f) { return lead(f).exponent; }

std::optional<std::size_t> steps_to_cutoff(const Exponent& start, const Exponent& step, const Exponent& cut) {
  if (!(start > cut)) return 0;
  std::size_t j = 0;
  while (j < step.size() && step.coord_sign(j) == 0) ++j;
  if (j == step.size() || step.coord_sign(j) > 0) return std::nullopt;
  // Coordinates before j never move, so they must already sit on the cutoff.
  for (std::size_t i = 0; i < j; ++i)
    if (start.coord(i) != cut.coord(i)) return start.coord(i) < cut.coord(i) ? std::optional<std::size_t>(0) : std::nullopt;
  const Rational k = (start.coord(j) - cut.coord(j)) / -step.coord(j);
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), k.get_num_mpz_t(), k.get_den_mpz_t());
  return q.get_ui() + 1;
}

void require_powers_reach(const Series& eps, const Exponent& cut, const char* what) {
  if (eps.known_zero()) return;
  const Exponent e = lead_exponent(eps);
  if (!steps_to_cutoff(Exponent::zero(e.kind()), e, cut))
    throw IterationLimitError(std::string(what) + ": powers of " + to_string(e) + " never fall below the cutoff " +
                              to_string(cut) + "; use a cutoff with a log coordinate such as (0,-40)");
}

Series invert_series(const Series& f) {
  if (f.is_exact_zero()) throw DivisionByZeroError("inverse of the zero series");
  const Term l = lead(f);
  const Rational inv_c = 1 / l.coeff;
  const Exponent inv_e = -l.exponent;
  // f = c m (1 + eps)
  const Series eps = f.times_term(Term{inv_c, inv_e}) - Series::constant(f.context(), 1);
  if (eps.is_exact_zero()) return Series::monomial(f.context(), inv_c, inv_e);
  const Exponent work = f.field().cutoff + l.exponent;
  require_powers_reach(eps, work, "invert_series");
  const Series minus_eps = -eps;
  Series sum = Series::constant(f.context(), 1);
  Series power = sum;
  for (std::size_t k = 0;; ++k) {
    if (k >= f.field().max_iter)
      throw IterationLimitError("invert_series: geometric series did not reach the cutoff");
    power = mul_truncated(power, minus_eps, work);
    sum += power;
    if (power.known_zero()) break;
  }
  return sum.times_term(Term{inv_c, inv_e});
}

Series divide(const Series& f, const Series& g) { return mul(f, invert_series(g)); }

Series power(const Series& f, long n) {
  if (n < 0) return power(invert_series(f), -n);
  Series result = Series::constant(f.context(), 1);
  Series base = f;
  auto k = static_cast<unsigned long>(n);
  while (k > 0) {
    if (k & 1u) result = mul(result, base);
    k >>= 1u;
    if (k > 0) base = mul(base, base);
  }
  return result;
}

const char* to_string(Dominance d) {
  switch (d) {
    case Dominance::Smaller: return "smaller";
    case Dominance::Comparable: return "comparable";
    case Dominance::Larger: return "larger";
  }
  return "?";
}

Dominance dominance(const Series& f, const Series& g) {
  require_same_field(f, g);
  const bool fk = !f.known_zero(), gk = !g.known_zero();
  if (fk && gk) {
    const auto c = lead_exponent(f) <=> lead_exponent(g);
    if (c < 0) return Dominance::Smaller;
    if (c > 0) return Dominance::Larger;
    return Dominance::Comparable;
  }
  if (!fk && !gk) {
    if (f.is_exact() && g.is_exact()) throw ZeroSeriesError("dominance between two zero series");
    throw PrecisionError("dominance between two series hidden below their cutoffs");
  }
  // Exactly one side has a known lead.
  if (!fk) {
    if (f.is_exact() || lead_exponent(g) > *f.cutoff()) return Dominance::Smaller;
    throw PrecisionError("dominance undecided: lead " + to_string(lead_exponent(g)) + " is not above cutoff " +
                         to_string(*f.cutoff()));
  }
  if (g.is_exact() || lead_exponent(f) > *g.cutoff()) return Dominance::Larger;
  throw PrecisionError("dominance undecided: lead " + to_string(lead_exponent(f)) + " is not above cutoff " +
                       to_string(*g.cutoff()));
}

bool strictly_smaller(const Series& f, const Series& g) { return dominance(f, g) == Dominance::Smaller; }

bool asymptotic(const Series& f, const Series& g) {
  require_same_field(f, g);
  return lead(f) == lead(g);
}

Series truncate(const Series& f, const Exponent& new_cutoff) {
  if (new_cutoff.kind() != f.field().exponent_kind()) throw ContextMismatchError("cutoff kind does not match field");
  if (f.cutoff() && new_cutoff < *f.cutoff())
    throw PrecisionError("cannot refine cutoff " + to_string(*f.cutoff()) + " to " + to_string(new_cutoff));
  std::vector<Term> kept;
  for (const auto& t : f.terms()) {
    if (t.exponent > new_cutoff)
      kept.push_back(t);
    else
      break;
  }
  return SeriesAccess::make(f.context(), std::move(kept), new_cutoff);
}

bool equal_to_cutoff(const Series& f, const Series& g) { return (f - g).known_zero(); }

}  // namespace parcon
