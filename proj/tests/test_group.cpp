#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gen.hpp"
#include "parcon/errors.hpp"

using namespace parcon;
using namespace parcon::testing;

namespace {

Rational binomial(const Rational& a, long k) {
  Rational r = 1;
  for (long i = 0; i < k; ++i) r = r * (a - i) / (i + 1);
  return r;
}

// sqrt(x^2 + 2) = x sum_k binom(1/2, k) 2^k x^(-2k): the time-1 flow of x' = 1/x.
Series sqrt_flow_oracle(const ContextPtr& ctx, long terms) {
  std::vector<Term> out;
  Rational two_k = 1;
  for (long k = 0; k < terms; ++k, two_k *= 2) out.push_back(Term{binomial(Rational(1, 2), k) * two_k, E(1 - 2 * k)});
  return Series(ctx, std::move(out));
}

// Inverse of y = x + 1/x is x - sum_k Catalan(k) x^(-2k-1).
Series catalan_oracle(const ContextPtr& ctx, long terms) {
  std::vector<Term> out{Term{1, E(1)}};
  mpz_class c = 1;
  for (long k = 0; k < terms; ++k) {
    out.push_back(Term{Rational(-c), E(-2 * k - 1)});
    c = c * 2 * (2 * k + 1) / (k + 2);
  }
  return Series(ctx, std::move(out));
}

ParabolicSeries P(const ContextPtr& ctx, std::string_view text) { return ParabolicSeries(S(ctx, text)); }
GroupElement G(const ContextPtr& ctx, std::string_view text) { return GroupElement(S(ctx, text)); }

// a and b agree on every term above `below`.
bool agree_above(const Series& a, const Series& b, const Exponent& below) {
  return truncate(a - b, below).known_zero();
}

}  // namespace

TEST_CASE("element and parabolic preconditions") {
  const auto k = k_context();
  CHECK_THROWS_AS(G(k, "x"), NotContractingError);
  CHECK_THROWS_AS(G(k, "x^2 + 1"), NotContractingError);
  CHECK_THROWS_AS(P(k, "2*x"), NotParabolicError);
  CHECK_THROWS_AS(P(k, "x^(1/2)"), NotParabolicError);
  CHECK(P(k, "x + x^(1/2)").delta() == S(k, "x^(1/2)"));
}

TEST_CASE("exp_map examples") {
  const auto k = k_context(-12);
  CHECK(exp_map(GroupElement::identity(k)).series() == S(k, "x"));
  CHECK(exp_map(G(k, "1")).series() == S(k, "x + 1"));
  const auto e = exp_map(G(k, "x^(-1)")).series();
  CHECK(agree_above(e, sqrt_flow_oracle(k, 8), E(-12)));
  CHECK(e.coefficient(E(-3)) == Rational(-1, 2));
  CHECK(e.coefficient(E(-2)) == 0);
  CHECK(e.cutoff());
}

TEST_CASE("log_map examples") {
  const auto k = k_context(-12);
  CHECK(log_map(P(k, "x")).series().is_exact_zero());
  CHECK(log_map(P(k, "x + 1")).series() == S(k, "1"));
  CHECK(equal_to_cutoff(log_map(ParabolicSeries(sqrt_flow_oracle(k, 8))).series(), S(k, "x^(-1)")));
}

TEST_CASE("compose examples") {
  const auto k = k_context(-12);
  const auto g = S(k, "x^(1/2) + 3*x^(-2)");
  CHECK(equal_to_cutoff(compose(g, P(k, "x")), g));
  CHECK(compose(S(k, "x^2"), P(k, "x + 1")) == S(k, "x^2 + 2*x + 1"));
  const auto geo = compose(S(k, "x^(-1)"), P(k, "x + 1"));
  for (long n = 1; n < 12; ++n) CHECK(geo.coefficient(E(-n)) == (n % 2 == 1 ? 1 : -1));
  const auto p = P(k, "x + x^(1/3)");
  const auto a = S(k, "x^(2/3) - x^(-1)"), b = S(k, "1 + x^(-1/2)");
  CHECK(equal_to_cutoff(compose(mul(a, b), p), mul(compose(a, p), compose(b, p))));
}

TEST_CASE("invert_parabolic examples") {
  const auto k = k_context(-12);
  CHECK(invert_parabolic(P(k, "x")).series() == S(k, "x"));
  CHECK(equal_to_cutoff(invert_parabolic(P(k, "x + 1")).series(), S(k, "x - 1")));
  const auto p = P(k, "x + x^(-1)");
  const auto q = invert_parabolic(p);
  CHECK(agree_above(q.series(), catalan_oracle(k, 6), E(-12)));
  CHECK(equal_to_cutoff(compose(p, q).series(), S(k, "x")));
  CHECK(equal_to_cutoff(compose(q, p).series(), S(k, "x")));
}

TEST_CASE("star and bch examples") {
  const auto k = k_context(-10);
  const auto f = G(k, "x^(1/2) + x^(-2)");
  const auto g = G(k, "3*x^(-1/3)");
  CHECK(equal_to_cutoff(star(f, GroupElement::identity(k)).series(), f.series()));
  CHECK(equal_to_cutoff(star(GroupElement::identity(k), f).series(), f.series()));
  CHECK(star(f, -f).series().known_zero());
  CHECK(bch_truncated(f, GroupElement::identity(k)) == f.series());
  const auto c = G(k, "2*x^(1/2) + 2*x^(-2)");  // commutes with f
  CHECK(bch_truncated(f, c) == f.series() + c.series());
  CHECK(equal_to_cutoff(star(f, c).series(), f.series() + c.series()));
  const auto residual = star(f, g).series() - bch_truncated(f, g);
  const auto b = lie_bracket(f.series(), g.series());
  CHECK(strictly_smaller(residual, lie_bracket(f.series(), b)));
  CHECK(strictly_smaller(residual, lie_bracket(g.series(), b)));
}

TEST_CASE("group_conjugate examples and orientation") {
  const auto k = k_context(-10);
  const auto phi = G(k, "x^(1/3) - x^(-1)");
  const auto h = G(k, "1 + x^(-2/3)");
  CHECK(group_conjugate(GroupElement::identity(k), h).series() == h.series());
  const auto c = group_conjugate(phi, h).series();
  CHECK(asymptotic(c, h.series()));
  CHECK(asymptotic(c - h.series(), lie_bracket(phi.series(), h.series())));
  // φ ∗ h ∗ (-φ) on the group side is σ^inv ∘ exp_map(h) ∘ σ on the series side.
  CHECK(equal_to_cutoff(c, star(star(phi, h), -phi).series()));
  const auto sigma = exp_map(phi);
  const auto series_side = compose(compose(invert_parabolic(sigma), exp_map(h)), sigma);
  CHECK(equal_to_cutoff(c, log_map(series_side).series()));
  const auto wrong_way = compose(compose(sigma, exp_map(h)), invert_parabolic(sigma));
  CHECK_FALSE(equal_to_cutoff(c, log_map(wrong_way).series()));
}

TEST_CASE("isomorphism law and round trips") {
  Gen gen(41);
  for (const auto& ctx : {k_context(-8), tlog_context(1, true, -8)}) {
    for (int i = 0; i < 25; ++i) {
      const auto f = gen.element(ctx), g = gen.element(ctx);
      CHECK(equal_to_cutoff(exp_map(star(f, g)).series(), compose(exp_map(g), exp_map(f)).series()));
      CHECK(equal_to_cutoff(log_map(exp_map(f)).series(), f.series()));
      const auto p = ParabolicSeries(Series::x(ctx) + g.series());
      CHECK(equal_to_cutoff(exp_map(log_map(p)).series(), p.series()));
    }
  }
}

TEST_CASE("group laws") {
  Gen gen(42);
  for (const auto& ctx : {k_context(-8), tlog_context(1, true, -8)}) {
    for (int i = 0; i < 15; ++i) {
      const auto f = gen.element(ctx), g = gen.element(ctx), h = gen.element(ctx);
      CHECK(equal_to_cutoff(star(star(f, g), h).series(), star(f, star(g, h)).series()));
      CHECK(star(f, -f).series().known_zero());
      CHECK(star(-f, f).series().known_zero());
      if (!(f.series() + g.series()).is_exact_zero()) CHECK(asymptotic(star(f, g).series(), f.series() + g.series()));
    }
  }
}

TEST_CASE("chain rule and associativity of composition") {
  Gen gen(43);
  for (const auto& ctx : {k_context(-8), tlog_context(1, true, -8)}) {
    for (int i = 0; i < 25; ++i) {
      const auto g = gen.series(ctx, 3, -3, 2);
      const auto p = ParabolicSeries(Series::x(ctx) + gen.contracting(ctx));
      const auto q = ParabolicSeries(Series::x(ctx) + gen.contracting(ctx));
      CHECK(equal_to_cutoff(derive(compose(g, p)), mul(derive(p.series()), compose(derive(g), p))));
      CHECK(equal_to_cutoff(compose(compose(g, p), q), compose(g, compose(p, q))));
    }
  }
}

TEST_CASE("log-lex flows") {
  const auto t = tlog_context(1, true, -8);
  // exp(∂)(x) = x + 1, and composition with x + 1 shifts log(x) by its Taylor tail.
  CHECK(exp_map(G(t, "1")).series() == S(t, "x + 1"));
  const auto shifted = compose(S(t, "log(x)"), P(t, "x + 1"));
  CHECK(shifted.coefficient(L({0, 1})) == 1);
  CHECK(shifted.coefficient(L({-1})) == 1);
  CHECK(shifted.coefficient(L({-2})) == Rational(-1, 2));
  // x/log(x)^2 gains only log factors per step, so the cutoff must sit at x^1.
  const auto fine = make_loglex_context(1, true, L({1, -8}));
  const auto f = G(fine, "x/log(x)^2");
  const auto e = exp_map(f).delta();
  CHECK(asymptotic(e, f.series()));
  CHECK(e.coefficient(L({1, -3})) == 0);
  CHECK(e.coefficient(L({1, -4})) == Rational(1, 2));
}

TEST_CASE("iteration limit is an error") {
  const auto k = make_rational_context(-40, 5);
  // exp(x^(1/2)∂)(x) = x + x^(1/2) + 1/4 is finite; x^(1/3) is not.
  CHECK(exp_map(GroupElement(S(k, "x^(1/2)"))).series() == S(k, "x + x^(1/2) + 1/4"));
  CHECK_THROWS_AS(exp_map(GroupElement(S(k, "x^(1/3)"))), IterationLimitError);
}
