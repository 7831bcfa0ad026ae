#include "parcon/expr.hpp"

#include <cctype>
#include <climits>
#include <optional>
#include <string>
#include <utility>

#include "parcon/errors.hpp"

namespace parcon {

namespace {

using Kind = SeriesExpr::Kind;

SeriesExpr node(Kind kind, std::size_t offset, std::vector<SeriesExpr> args = {}) {
  SeriesExpr e;
  e.kind = kind;
  e.offset = offset;
  e.args = std::move(args);
  return e;
}

// Value of a constant subexpression, if it is one.
std::optional<Rational> fold(const SeriesExpr& e) {
  switch (e.kind) {
    case Kind::Number: return e.value;
    case Kind::Neg: {
      auto a = fold(e.args[0]);
      if (a) *a = -*a;
      return a;
    }
    case Kind::Sum:
    case Kind::Difference:
    case Kind::Product:
    case Kind::Quotient: {
      auto a = fold(e.args[0]);
      auto b = fold(e.args[1]);
      if (!a || !b) return std::nullopt;
      if (e.kind == Kind::Sum) return *a + *b;
      if (e.kind == Kind::Difference) return *a - *b;
      if (e.kind == Kind::Product) return *a * *b;
      if (sgn(*b) == 0) return std::nullopt;
      return Rational(*a / *b);
    }
    case Kind::Power: {
      auto a = fold(e.args[0]);
      if (!a || !is_integer(e.value) || !e.value.get_num().fits_slong_p()) return std::nullopt;
      if (sgn(*a) == 0 && sgn(e.value) < 0) return std::nullopt;
      return pow(*a, e.value.get_num().get_si());
    }
    default: return std::nullopt;
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  SeriesExpr run() {
    SeriesExpr e = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'", {"+", "-", "*", "/", "^", "end of input"});
    return e;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool eat(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected) {
    throw ParseError(what + " at offset " + std::to_string(pos_), pos_, std::move(expected));
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'", {std::string(1, c)});
  }

  SeriesExpr sum() {
    SeriesExpr lhs = product();
    for (;;) {
      const std::size_t at = (skip(), pos_);
      if (eat('+'))
        lhs = node(Kind::Sum, at, vec(std::move(lhs), product()));
      else if (eat('-'))
        lhs = node(Kind::Difference, at, vec(std::move(lhs), product()));
      else
        return lhs;
    }
  }

  SeriesExpr product() {
    SeriesExpr lhs = unary();
    for (;;) {
      const std::size_t at = (skip(), pos_);
      if (eat('*'))
        lhs = node(Kind::Product, at, vec(std::move(lhs), unary()));
      else if (eat('/'))
        lhs = node(Kind::Quotient, at, vec(std::move(lhs), unary()));
      else
        return lhs;
    }
  }

  SeriesExpr unary() {
    const std::size_t at = (skip(), pos_);
    if (eat('-')) {
      std::vector<SeriesExpr> a;
      a.push_back(unary());
      return node(Kind::Neg, at, std::move(a));
    }
    if (eat('+')) return unary();
    return power();
  }

  SeriesExpr power() {
    SeriesExpr base = atom();
    const std::size_t at = (skip(), pos_);
    if (!eat('^')) return base;
    const std::size_t exp_at = (skip(), pos_);
    const SeriesExpr exponent = unary();
    const auto q = fold(exponent);
    if (!q) {
      pos_ = exp_at;
      fail("power exponent must be a rational constant", {"rational constant"});
    }
    std::vector<SeriesExpr> a;
    a.push_back(std::move(base));
    SeriesExpr e = node(Kind::Power, at, std::move(a));
    e.value = *q;
    return e;
  }

  SeriesExpr atom() {
    const char c = peek();
    const std::size_t at = pos_;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      SeriesExpr e = node(Kind::Number, at);
      e.value = Rational(mpz_class(std::string(s_.substr(at, pos_ - at)), 10));
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const auto name = s_.substr(at, pos_ - at);
      if (name == "x") return node(Kind::X, at);
      if (name == "log" || name == "O") {
        expect('(');
        std::vector<SeriesExpr> a;
        a.push_back(sum());
        expect(')');
        return node(name == "log" ? Kind::Log : Kind::Order, at, std::move(a));
      }
      pos_ = at;
      fail("unknown identifier '" + std::string(name) + "'", {"x", "log", "O"});
    }
    if (eat('(')) {
      SeriesExpr e = sum();
      expect(')');
      return e;
    }
    fail(c ? std::string("unexpected character '") + c + "'" : std::string("unexpected end of input"),
         {"integer", "x", "log", "O", "(", "-"});
  }

  static std::vector<SeriesExpr> vec(SeriesExpr a, SeriesExpr b) {
    std::vector<SeriesExpr> v;
    v.push_back(std::move(a));
    v.push_back(std::move(b));
    return v;
  }
};

// f = c m (1 + ε); returns ε.
Series unit_part(const Series& f, const Term& l) {
  return f.times_term(Term{1 / l.coeff, -l.exponent}) - Series::constant(f.context(), 1);
}

Exponent log_level(std::size_t k) {
  std::vector<Rational> c(k + 1);
  c[k] = 1;
  return Exponent::loglex(std::move(c));
}

}  // namespace

SeriesExpr parse(std::string_view text) { return Parser(text).run(); }

Series rational_power(const Series& f, const Rational& r) {
  if (f.is_exact_zero()) {
    if (sgn(r) > 0) return f;
    throw DivisionByZeroError("zero to a non-positive power");
  }
  if (is_integer(r) && r.get_num().fits_slong_p()) return power(f, r.get_num().get_si());
  const Term l = lead(f);
  const auto root = r.get_den().fits_ulong_p() ? exact_root(l.coeff, r.get_den().get_ui()) : std::nullopt;
  if (!r.get_num().fits_slong_p() || !root)
    throw DomainError("coefficient " + to_string(l.coeff) + " has no exact rational power " + to_string(r));
  const Term scale{pow(*root, r.get_num().get_si()), l.exponent.scaled(r)};
  const Series eps = unit_part(f, l);
  if (eps.is_exact_zero()) return Series::term(f.context(), scale);
  const auto& field = f.field();
  const Exponent work = field.cutoff - scale.exponent;
  require_powers_reach(eps, work, "rational_power");
  Series sum = Series::constant(f.context(), 1);
  Series pk = sum;
  Rational binom = 1;
  for (std::size_t k = 1;; ++k) {
    if (k >= field.max_iter) throw IterationLimitError("rational_power: binomial series did not reach the cutoff");
    binom *= (r - static_cast<long>(k - 1)) / Rational(static_cast<long>(k));
    pk = mul_truncated(pk, eps, work);
    sum += pk.scaled(binom);
    if (pk.known_zero()) break;
  }
  return sum.times_term(scale);
}

Series log_series(const Series& f) {
  if (f.field().kind != FieldKind::LogLex) throw ContextMismatchError("log needs the log-lex field (--field tlog)");
  if (f.is_exact_zero()) throw DomainError("log of zero");
  const Term l = lead(f);
  if (l.coeff != 1) throw DomainError("log needs leading coefficient 1, got " + to_string(l.coeff));
  const auto& ctx = f.context();
  // log(l_0^a0 ... l_n^an) = sum a_k l_{k+1}
  std::vector<Term> logs;
  for (std::size_t k = 0; k < l.exponent.size(); ++k)
    logs.push_back(Term{l.exponent.coord(k), log_level(k + 1)});
  Series result(ctx, std::move(logs));
  const Series eps = unit_part(f, l);
  if (eps.is_exact_zero()) return result;
  const auto& field = f.field();
  require_powers_reach(eps, field.cutoff, "log");
  Series pk = Series::constant(ctx, 1);
  for (std::size_t k = 1;; ++k) {
    if (k >= field.max_iter) throw IterationLimitError("log: series did not reach the cutoff");
    pk = mul_truncated(pk, eps, field.cutoff);
    result += pk.scaled(Rational(k % 2 ? 1 : -1, static_cast<long>(k)));
    if (pk.known_zero()) break;
  }
  return result;
}

Series evaluate(const SeriesExpr& e, const ContextPtr& ctx) {
  switch (e.kind) {
    case Kind::Number: return Series::constant(ctx, e.value);
    case Kind::X: return Series::x(ctx);
    case Kind::Log: return log_series(evaluate(e.args[0], ctx));
    case Kind::Order: {
      const Series m = evaluate(e.args[0], ctx);
      if (!m.is_exact() || m.size() != 1) throw DomainError("O(...) needs a single monomial");
      return Series(ctx, {}, m.terms().front().exponent);
    }
    case Kind::Power: return rational_power(evaluate(e.args[0], ctx), e.value);
    case Kind::Neg: return -evaluate(e.args[0], ctx);
    case Kind::Sum: return evaluate(e.args[0], ctx) + evaluate(e.args[1], ctx);
    case Kind::Difference: return evaluate(e.args[0], ctx) - evaluate(e.args[1], ctx);
    case Kind::Product: return mul(evaluate(e.args[0], ctx), evaluate(e.args[1], ctx));
    case Kind::Quotient: {
      const Series den = evaluate(e.args[1], ctx);
      if (den.is_exact_zero()) throw DivisionByZeroError("division by zero");
      return divide(evaluate(e.args[0], ctx), den);
    }
  }
  throw std::logic_error("unhandled expression kind");
}

Series parse_series(std::string_view text, const ContextPtr& ctx) { return evaluate(parse(text), ctx); }

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<std::vector<Rational>> parse_tuple(std::string_view s) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') return std::nullopt;
  s = s.substr(1, s.size() - 2);
  std::vector<Rational> out;
  for (;;) {
    const auto comma = s.find(',');
    try {
      out.push_back(parse_rational(trim(s.substr(0, comma))));
    } catch (const std::invalid_argument&) {
      return std::nullopt;
    }
    if (comma == std::string_view::npos) return out;
    s.remove_prefix(comma + 1);
  }
}

}  // namespace

Exponent parse_cutoff(std::string_view text, ExponentKind kind) {
  text = trim(text);
  std::optional<std::vector<Rational>> coords;
  try {
    coords = std::vector<Rational>{parse_rational(text)};
  } catch (const std::invalid_argument&) {
    coords = parse_tuple(text);
  }
  if (coords) {
    if (kind == ExponentKind::Rational) {
      if (coords->size() != 1) throw ContextMismatchError("rational-field cutoff takes a single exponent");
      return Exponent::rational(coords->front());
    }
    return Exponent::loglex(std::move(*coords));
  }
  const ContextPtr ctx = kind == ExponentKind::Rational ? make_rational_context() : make_loglex_context();
  const Series m = parse_series(text, ctx);
  if (!m.is_exact() || m.size() != 1) throw DomainError("cutoff must be a single monomial: '" + std::string(text) + "'");
  return m.terms().front().exponent;
}

}  // namespace parcon
