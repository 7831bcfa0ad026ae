#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "parcon/group.hpp"

namespace parcon {

enum class Verdict { Conjugate, NotConjugate, Undetermined };

// Why one conjugation step could not be taken.
enum class ObstructionKind {
  None,
  NotAsymptotic,   // lead(f) != lead(g)
  PseudoGap,       // -(f-g)/g^2 has no asymptotic integral
  NonContracting,  // the correction lead(g)*τ is not ≺ x
};

const char* to_string(Verdict v);
const char* to_string(ObstructionKind k);

struct StepResult {
  std::optional<GroupElement> correction;
  ObstructionKind failure = ObstructionKind::None;
  // Exponent of -(f-g)/g^2 (the pseudo-gap itself when failure == PseudoGap).
  std::optional<Exponent> obstruction;
  std::size_t depth = 0;
  bool extended = false;
};

/// One step of the approximate conjugacy construction: a single term y with
/// group_conjugate(y, g) - f ≺ f - g, built as y = lead(g) * τ where
/// τ' ∼ -(f-g)/g^2. `ambient_depth` is the log depth of the whole problem.
StepResult asymptotically_conjugate(const GroupElement& f, const GroupElement& g, std::size_t ambient_depth = 0);

struct TraceStep {
  std::size_t index = 0;
  Term residual;    // leading term of f - (current conjugate of g)
  Term correction;  // the term y applied at this step
};

struct ConjugacyOutcome {
  Verdict verdict = Verdict::Undetermined;
  // φ with φ ∗ g ∗ (-φ) = f to the working cutoff.
  std::optional<GroupElement> witness;
  // exp_map(witness), as accumulated by the construction.
  std::optional<ParabolicSeries> witness_parabolic;
  std::optional<Exponent> obstruction;
  ObstructionKind obstruction_kind = ObstructionKind::None;
  std::vector<TraceStep> trace;
  // Log depth of the input pair and of the witness (LogLex only).
  std::size_t input_depth = 0;
  std::size_t depth = 0;
};

/// Iterates asymptotically_conjugate until f - conj(g) vanishes to cutoff.
/// A failure at the first step proves non-conjugacy; a later failure is a
/// resonant stall and leaves the question open.
ConjugacyOutcome construct_conjugator(const GroupElement& f, const GroupElement& g);

// x + δ and x + ε conjugate in the log-lex field iff ε - δ ≺ δ - xδ'.
bool decide_transseries(const Series& delta, const Series& epsilon);

enum class PoweredVerdict { SufficientYes, NoByObstruction, Unknown };
const char* to_string(PoweredVerdict v);

/// Grounded field (rational exponents), requires ε ∼ δ.
/// Yes when ε - δ ≺ δ - xδ' and (ε - δ)/δ^2 ≺ x^-1 (no later step can reach
/// the pseudo-gap); No when the first step already fails; Unknown otherwise.
PoweredVerdict decide_powered(const Series& delta, const Series& epsilon);

// φ ∗ g ∗ (-φ) = f and σ^inv ∘ exp_map(g) ∘ σ = exp_map(f) with σ = exp_map(φ).
bool verify_witness(const GroupElement& f, const GroupElement& g, const GroupElement& phi);
// Same check with σ = exp_map(φ) supplied by the caller.
bool verify_witness(const GroupElement& f, const GroupElement& g, const GroupElement& phi,
                    const ParabolicSeries& sigma);

}  // namespace parcon
