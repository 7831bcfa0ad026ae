#include "parcon/conjugacy.hpp"

#include <algorithm>
#include <stdexcept>

#include "parcon/calculus.hpp"
#include "parcon/errors.hpp"

namespace parcon {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Conjugate: return "Conjugate";
    case Verdict::NotConjugate: return "NotConjugate";
    case Verdict::Undetermined: return "Undetermined";
  }
  return "?";
}

const char* to_string(ObstructionKind k) {
  switch (k) {
    case ObstructionKind::None: return "none";
    case ObstructionKind::NotAsymptotic: return "not-asymptotic";
    case ObstructionKind::PseudoGap: return "pseudo-gap";
    case ObstructionKind::NonContracting: return "non-contracting";
  }
  return "?";
}

const char* to_string(PoweredVerdict v) {
  switch (v) {
    case PoweredVerdict::SufficientYes: return "SufficientYes";
    case PoweredVerdict::NoByObstruction: return "NoByObstruction";
    case PoweredVerdict::Unknown: return "Unknown";
  }
  return "?";
}

namespace {

std::size_t ambient_depth(const Series& a, const Series& b) {
  return std::max({a.field().depth, a.depth(), b.depth()});
}

// The step for residual r = f - g, given lead(g).
StepResult step_from(const Term& r, const Term& g, const ContextPtr& ctx, std::size_t depth) {
  StepResult out;
  // -(f-g)/g^2, leading term only
  const Term mu{-r.coeff / (g.coeff * g.coeff), r.exponent - g.exponent - g.exponent};
  out.obstruction = mu.exponent;
  out.depth = depth;
  AsymptoticIntegral tau;
  try {
    tau = asymptotic_integral(Series::term(ctx, mu), depth);
  } catch (const PseudoGapError& e) {
    out.failure = ObstructionKind::PseudoGap;
    out.obstruction = e.obstruction();
    return out;
  }
  const Series y = Series::term(ctx, Term{g.coeff * tau.term.coeff, g.exponent + tau.term.exponent});
  if (!is_contracting(y)) {
    out.failure = ObstructionKind::NonContracting;
    return out;
  }
  out.correction.emplace(y);
  out.depth = tau.depth;
  out.extended = tau.extended;
  return out;
}

}  // namespace

StepResult asymptotically_conjugate(const GroupElement& f, const GroupElement& g, std::size_t depth) {
  require_same_field(f.series(), g.series());
  if (f.series().known_zero() || g.series().known_zero())
    throw DomainError("asymptotic conjugacy needs nonzero f and g");
  const Series r = f.series() - g.series();
  if (r.known_zero()) throw DomainError("f and g already agree to the cutoff");
  depth = std::max(depth, ambient_depth(f.series(), g.series()));
  const Term lf = lead(f.series());
  const Term lg = lead(g.series());
  if (lf != lg) {
    StepResult out;
    out.failure = ObstructionKind::NotAsymptotic;
    out.obstruction = lead_exponent(r) - lg.exponent - lg.exponent;
    out.depth = depth;
    return out;
  }
  return step_from(lead(r), lg, f.context(), depth);
}

ConjugacyOutcome construct_conjugator(const GroupElement& f, const GroupElement& g) {
  require_same_field(f.series(), g.series());
  if (f.series().known_zero() || g.series().known_zero())
    throw DomainError("conjugacy needs nonzero f and g");
  const auto& ctx = f.context();
  ConjugacyOutcome out;
  out.input_depth = ambient_depth(f.series(), g.series());
  out.depth = out.input_depth;

  Series conj = g.series();
  Series sigma = Series::x(ctx);
  std::optional<Exponent> previous;
  for (std::size_t step = 0;; ++step) {
    if (step >= ctx->max_iter) throw IterationLimitError("construct_conjugator: iteration limit reached");
    const Series r = f.series() - conj;
    if (r.known_zero()) break;
    const Term rl = lead(r);
    if (previous && !(rl.exponent < *previous))
      throw std::logic_error("construct_conjugator: residual did not decrease at " + to_string(rl.exponent));
    previous = rl.exponent;

    StepResult s;
    if (lead(f.series()) != lead(conj)) {
      s.failure = ObstructionKind::NotAsymptotic;
      s.obstruction = rl.exponent - lead_exponent(conj) - lead_exponent(conj);
    } else {
      s = step_from(rl, lead(conj), ctx, out.depth);
    }
    if (!s.correction) {
      out.verdict = step == 0 ? Verdict::NotConjugate : Verdict::Undetermined;
      out.obstruction = s.obstruction;
      out.obstruction_kind = s.failure;
      return out;
    }
    out.depth = std::max(out.depth, s.depth);
    out.trace.push_back(TraceStep{step, rl, lead(s.correction->series())});
    conj = adjoint_flow(*s.correction, conj);
    sigma = flow(*s.correction, sigma);
  }

  // log_map only returns once exp_map(phi) matches sigma to the cutoff.
  ParabolicSeries sigma_p(std::move(sigma));
  GroupElement phi = log_map(sigma_p);
  out.depth = std::max(out.depth, phi.series().depth());
  if (!verify_witness(f, g, phi, sigma_p))
    throw std::logic_error("construct_conjugator: witness failed verification");
  out.verdict = Verdict::Conjugate;
  out.witness.emplace(std::move(phi));
  out.witness_parabolic.emplace(std::move(sigma_p));
  return out;
}

bool decide_transseries(const Series& delta, const Series& epsilon) {
  require_same_field(delta, epsilon);
  if (delta.field().kind != FieldKind::LogLex) throw ContextMismatchError("decide_transseries needs the log-lex field");
  if (delta.known_zero() || epsilon.known_zero()) throw DomainError("δ and ε must be nonzero");
  if (!is_contracting(delta) || !is_contracting(epsilon)) throw NotContractingError("δ and ε must be ≺ x");
  const Series d = epsilon - delta;
  if (d.is_exact_zero()) return true;
  // δ(1 - xδ†) = δ - xδ'
  const Series bound = delta - mul(Series::x(delta.context()), derive(delta));
  return strictly_smaller(d, bound);
}

PoweredVerdict decide_powered(const Series& delta, const Series& epsilon) {
  require_same_field(delta, epsilon);
  if (delta.field().kind != FieldKind::RationalK) throw ContextMismatchError("decide_powered needs the rational field");
  if (delta.known_zero() || epsilon.known_zero()) throw DomainError("δ and ε must be nonzero");
  if (!is_contracting(delta) || !is_contracting(epsilon)) throw NotContractingError("δ and ε must be ≺ x");
  if (!asymptotic(delta, epsilon)) throw DomainError("decide_powered requires ε ∼ δ");
  const Series d = epsilon - delta;
  if (d.is_exact_zero()) return PoweredVerdict::SufficientYes;
  const auto& ctx = delta.context();
  const Series bound = delta - mul(Series::x(ctx), derive(delta));
  const Series gap = mul(delta, delta).times_term(Term{1, Exponent::rational(-1)});
  if (strictly_smaller(d, bound) && strictly_smaller(d, gap)) return PoweredVerdict::SufficientYes;
  const auto s = asymptotically_conjugate(GroupElement(epsilon), GroupElement(delta));
  return s.correction ? PoweredVerdict::Unknown : PoweredVerdict::NoByObstruction;
}

bool verify_witness(const GroupElement& f, const GroupElement& g, const GroupElement& phi) {
  try {
    return verify_witness(f, g, phi, exp_map(phi));
  } catch (const Error&) {
    return false;
  }
}

bool verify_witness(const GroupElement& f, const GroupElement& g, const GroupElement& phi,
                    const ParabolicSeries& sigma) {
  try {
    if (!equal_to_cutoff(group_conjugate(phi, g).series(), f.series())) return false;
    const ParabolicSeries sigma_inv = exp_map(-phi);
    const ParabolicSeries lhs = compose(compose(sigma_inv, exp_map(g)), sigma);
    return equal_to_cutoff(lhs.series(), exp_map(f).series());
  } catch (const Error&) {
    return false;
  }
}

}  // namespace parcon
