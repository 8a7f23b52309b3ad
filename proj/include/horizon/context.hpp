#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "horizon/proposition.hpp"
#include "horizon/quantum.hpp"
#include "horizon/toy_state.hpp"

namespace horizon {

/// The set of (agent, observable) measurements a piece of reasoning relies
/// on. Constructor enforces that no agent appears twice and that no two
/// member observables give one subsystem two axes (co-measurability).
class Context {
 public:
  using Entry = std::pair<std::string, ObservableId>;

  Context() = default;
  explicit Context(std::vector<Entry> measured);

  const std::vector<Entry>& measured() const { return measured_; }

 private:
  std::vector<Entry> measured_;
};

/// One certified conditional inference: within `context`, `premise` being
/// observed licenses `conclusion` (a conditional whose condition is exactly
/// the premise). `source` names the measurement settings whose zero joint
/// probabilities justify it.
struct InferenceStep {
  std::string id;
  Context context;
  Proposition premise;
  Proposition conclusion;
  std::pair<Basis, Basis> source;

  /// Throws std::invalid_argument unless premise is direct and conclusion
  /// conditions exactly on the premise.
  InferenceStep(std::string id, Context context, Proposition premise,
                Proposition conclusion, std::pair<Basis, Basis> source);
};

struct ReasoningChain {
  std::vector<InferenceStep> steps;
  Proposition fused_conclusion;
};

/// Telescopes the steps: the fused conclusion asserts the last step's target
/// under the first step's premise. Throws std::invalid_argument on empty
/// input.
ReasoningChain make_chain(std::vector<InferenceStep> steps);

enum class ViolationReason {
  incompatible_contexts,
  information_bound_exceeded,
  condition_not_entailed,
};

std::string to_string(ViolationReason reason);

struct Violation {
  std::string first_step;
  std::string second_step;
  ViolationReason reason;
  std::string detail;
};

/// Validation outcome. `violation` is the first defect in check order;
/// `secondary_violation` carries a second, independently detected defect
/// when one exists (a chain can both mix incompatible contexts and exceed
/// the information bound).
struct Verdict {
  bool valid = true;
  std::optional<Violation> violation;
  std::optional<Violation> secondary_violation;

  static Verdict ok() { return {}; }
  static Verdict fail(Violation v) {
    return {false, std::move(v), std::nullopt};
  }
};

/// Valid iff certain_conditionals(state, step.source) contains the step's
/// conclusion. Invalid steps report condition-not-entailed with the nonzero
/// joint probability that defeats certainty.
Verdict validate_step(const InferenceStep& step, const QubitPairState& state);

/// Chain-level validation, in order:
///   1. every step individually valid (else that step's verdict);
///   2. no agent measures two different observables across steps;
///   3. the distinct unconditioned premises consumed fit info_bound;
///   4. no two steps measure one subsystem on two axes through different
///      agents.
/// The first failed check becomes the verdict's violation; one further
/// failed check is attached as secondary_violation. Throws std::domain_error
/// on an empty chain.
Verdict validate_chain(const ReasoningChain& chain,
                       const QubitPairState& state, int info_bound);

/// Counterfactual probe on a toy state, carried in demo traces.
struct CounterfactualCheck {
  std::string description;
  EpistemicState state;
  Proposition vary;
  Proposition hold;
  bool supported = false;
};

struct DemoTrace {
  std::string name;
  QubitPairState state;
  ReasoningChain chain;
  std::vector<Verdict> step_verdicts;
  Verdict chain_verdict;
  std::optional<double> counterexample_probability;
  std::vector<CounterfactualCheck> counterfactuals;
};

/// Three certified steps on the Hardy state fused into "x_B^+ whenever
/// x_A^-"; the fusion is rejected because one agent needs both x_A and z_A,
/// and the joint outcome the fusion forbids has probability 1/12.
DemoTrace hardy_demo();

/// The same conditionals distributed over four agents: no agent reuse, but
/// discharging all three conditions needs three unconditioned propositions
/// against a two-bit horizon.
DemoTrace fr_demo();

/// Two perfectly valid one-step inferences on the singlet state whose fusion
/// claims an unconditional element of reality; includes toy-state probes
/// separating (x_A^+, x_B^-) from (x_A^+, x_AB^+).
DemoTrace epr_demo();

}  // namespace horizon
