#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "parcon/series.hpp"

namespace parcon {

/// Parsed series expression. Children are owned by value.
struct SeriesExpr {
  enum class Kind { Number, X, Log, Order, Power, Neg, Sum, Difference, Product, Quotient };

  Kind kind = Kind::Number;
  Rational value;  // literal for Number, exponent for Power
  std::vector<SeriesExpr> args;
  std::size_t offset = 0;  // byte offset of the node in the source text
};

// Grammar, lowest precedence first:
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*
//   unary   := '-' unary | '+' unary | power
//   power   := atom ('^' unary)?          exponent must fold to a rational
//   atom    := integer | 'x' | 'log' '(' sum ')' | 'O' '(' sum ')' | '(' sum ')'
// O(m) stands for the unknown tail at or below the monomial m.
SeriesExpr parse(std::string_view text);

// Evaluates in the given field. Infinite expansions (quotients, rational
// powers, log) are truncated at the context's working cutoff.
Series evaluate(const SeriesExpr& e, const ContextPtr& ctx);

// parse + evaluate.
Series parse_series(std::string_view text, const ContextPtr& ctx);

// Rational power f^r through f = c m (1 + ε); needs an exact root of c.
Series rational_power(const Series& f, const Rational& r);

// log f for f = m (1 + ε) in the log-lex field (leading coefficient 1).
Series log_series(const Series& f);

// Cutoff specification: a rational ("-40", meaning x^-40), a coordinate
// tuple "(1,-30)", or a monomial expression such as "x*log(x)^(-30)".
Exponent parse_cutoff(std::string_view text, ExponentKind kind);

}  // namespace parcon
