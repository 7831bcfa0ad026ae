#pragma once

#include <cstddef>
#include <memory>
#include <optional>

#include "parcon/exponent.hpp"

namespace parcon {

enum class FieldKind {
  RationalK,  // C((Q)) with d/dx, grounded: pseudo-gap at x^-1
  LogLex,     // logarithmic transseries T_{0,n}
};

const char* to_string(FieldKind kind);

/// Which differential field a series lives in, and how far it is computed.
///
/// For LogLex, `depth` is the minimum log depth n of the ambient field
/// T_{0,n}; series that mention deeper logarithms lift the ambient depth
/// automatically. With `extendable` set, asymptotic integration may step
/// to depth n+1, which removes every pseudo-gap.
struct FieldContext {
  FieldKind kind = FieldKind::RationalK;
  std::size_t depth = 0;
  bool extendable = false;
  // Working precision: infinite expansions keep only terms strictly above it.
  Exponent cutoff = Exponent::rational(-40);
  // Bound on every fixed-point / expansion loop.
  std::size_t max_iter = 10000;

  ExponentKind exponent_kind() const noexcept {
    return kind == FieldKind::RationalK ? ExponentKind::Rational : ExponentKind::LogLex;
  }

  // Pseudo-gap of the field at the given ambient depth, if it has one.
  std::optional<Exponent> pseudo_gap(std::size_t ambient_depth) const;
};

using ContextPtr = std::shared_ptr<const FieldContext>;

ContextPtr make_rational_context(const Rational& cutoff = -40, std::size_t max_iter = 10000);
ContextPtr make_loglex_context(std::size_t depth = 0, bool extendable = true,
                               std::optional<Exponent> cutoff = std::nullopt,
                               std::size_t max_iter = 10000);
// Same field with a different working cutoff.
ContextPtr with_cutoff(const ContextPtr& ctx, const Exponent& cutoff);

}  // namespace parcon
