#include "parcon/context.hpp"

#include <algorithm>

#include "parcon/errors.hpp"

namespace parcon {

const char* to_string(FieldKind kind) { return kind == FieldKind::RationalK ? "k" : "tlog"; }

std::optional<Exponent> FieldContext::pseudo_gap(std::size_t ambient_depth) const {
  if (kind == FieldKind::RationalK) return Exponent::rational(-1);
  if (extendable) return std::nullopt;
  return Exponent::pseudo_gap(std::max(depth, ambient_depth));
}

ContextPtr make_rational_context(const Rational& cutoff, std::size_t max_iter) {
  auto ctx = std::make_shared<FieldContext>();
  ctx->kind = FieldKind::RationalK;
  ctx->cutoff = Exponent::rational(cutoff);
  ctx->max_iter = max_iter;
  return ctx;
}

ContextPtr make_loglex_context(std::size_t depth, bool extendable, std::optional<Exponent> cutoff,
                               std::size_t max_iter) {
  auto ctx = std::make_shared<FieldContext>();
  ctx->kind = FieldKind::LogLex;
  ctx->depth = depth;
  ctx->extendable = extendable;
  if (cutoff && cutoff->kind() != ExponentKind::LogLex)
    throw ContextMismatchError("log-lex context needs a log-lex cutoff");
  ctx->cutoff = cutoff ? *cutoff : Exponent::loglex({Rational(-40)});
  ctx->max_iter = max_iter;
  return ctx;
}

ContextPtr with_cutoff(const ContextPtr& ctx, const Exponent& cutoff) {
  if (cutoff.kind() != ctx->exponent_kind()) throw ContextMismatchError("cutoff kind does not match field");
  auto copy = std::make_shared<FieldContext>(*ctx);
  copy->cutoff = cutoff;
  return copy;
}

}  // namespace parcon
