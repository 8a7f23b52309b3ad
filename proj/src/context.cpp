#include "horizon/context.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace horizon {

namespace {

std::string probability_string(double p) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6g", p);
  return buffer;
}

Axis setting_axis(const Basis& basis) {
  return basis.kind == Basis::Kind::x ? Axis::x : Axis::z;
}

}  // namespace

Context::Context(std::vector<Entry> measured) : measured_(std::move(measured)) {
  for (std::size_t i = 0; i < measured_.size(); ++i) {
    for (std::size_t j = i + 1; j < measured_.size(); ++j) {
      if (measured_[i].first == measured_[j].first)
        throw std::invalid_argument("agent '" + measured_[i].first +
                                    "' appears twice in one context");
      const ObservableId a = measured_[i].second;
      const ObservableId b = measured_[j].second;
      if (a.scope == b.scope && a.axis != b.axis)
        throw std::invalid_argument(
            "context is not co-measurable: " + to_string(a) + " and " +
            to_string(b) + " give one subsystem two axes");
    }
  }
}

InferenceStep::InferenceStep(std::string id_in, Context context_in,
                             Proposition premise_in, Proposition conclusion_in,
                             std::pair<Basis, Basis> source_in)
    : id(std::move(id_in)),
      context(std::move(context_in)),
      premise(std::move(premise_in)),
      conclusion(std::move(conclusion_in)),
      source(std::move(source_in)) {
  if (!premise.is_direct())
    throw std::invalid_argument("step '" + id + "': premise must be direct");
  if (conclusion.is_direct() ||
      conclusion.condition->observable != premise.observable ||
      conclusion.condition->value != premise.value)
    throw std::invalid_argument(
        "step '" + id + "': conclusion must condition exactly on the premise");
}

ReasoningChain make_chain(std::vector<InferenceStep> steps) {
  if (steps.empty())
    throw std::invalid_argument("a reasoning chain needs at least one step");
  Proposition fused = conditional(
      steps.back().conclusion.observable, steps.back().conclusion.value,
      steps.front().premise.observable, steps.front().premise.value);
  return {std::move(steps), std::move(fused)};
}

std::string to_string(ViolationReason reason) {
  switch (reason) {
    case ViolationReason::incompatible_contexts:
      return "incompatible-contexts";
    case ViolationReason::information_bound_exceeded:
      return "information-bound-exceeded";
    case ViolationReason::condition_not_entailed:
      return "condition-not-entailed";
  }
  throw std::invalid_argument("unknown violation reason");
}

Verdict validate_step(const InferenceStep& step, const QubitPairState& state) {
  std::vector<Proposition> certified =
      certain_conditionals(state, step.source.first, step.source.second);
  if (std::find(certified.begin(), certified.end(), step.conclusion) !=
      certified.end())
    return Verdict::ok();

  const ObservableId cond = step.premise.observable;
  const ObservableId target = step.conclusion.observable;
  std::string detail;
  const bool opposite_sides =
      (cond.scope == Scope::A && target.scope == Scope::B) ||
      (cond.scope == Scope::B && target.scope == Scope::A);
  const ObservableId measured_a{setting_axis(step.source.first), Scope::A};
  const ObservableId measured_b{setting_axis(step.source.second), Scope::B};
  if (!opposite_sides) {
    detail = "premise and conclusion must address the two subsystems";
  } else if ((cond.scope == Scope::A ? measured_a : measured_b) != cond ||
             (target.scope == Scope::A ? measured_a : measured_b) != target) {
    detail = "the source settings measure " + to_string(measured_a) + ", " +
             to_string(measured_b) + ", not the named observables";
  } else {
    Outcome on_a = cond.scope == Scope::A ? step.premise.value
                                          : negated(step.conclusion.value);
    Outcome on_b = cond.scope == Scope::A ? negated(step.conclusion.value)
                                          : step.premise.value;
    double p = born(state, step.source.first, step.source.second)
                   .probability(on_a, on_b);
    detail = "P(" + to_string(direct(measured_a, on_a)) + ", " +
             to_string(direct(measured_b, on_b)) + ") = " +
             probability_string(p) + " is nonzero, so certainty fails";
  }
  return Verdict::fail(
      {step.id, step.id, ViolationReason::condition_not_entailed, detail});
}

Verdict validate_chain(const ReasoningChain& chain,
                       const QubitPairState& state, int info_bound) {
  if (chain.steps.empty())
    throw std::domain_error("cannot validate an empty chain");

  for (const InferenceStep& step : chain.steps) {
    Verdict verdict = validate_step(step, state);
    if (!verdict.valid) return verdict;
  }

  std::vector<Violation> found;

  // One agent cannot hold two different measurements across the fused
  // contexts.
  [&] {
    for (std::size_t i = 0; i < chain.steps.size(); ++i)
      for (std::size_t j = i + 1; j < chain.steps.size(); ++j)
        for (const auto& [agent_i, obs_i] : chain.steps[i].context.measured())
          for (const auto& [agent_j, obs_j] :
               chain.steps[j].context.measured())
            if (agent_i == agent_j && obs_i != obs_j) {
              found.push_back(
                  {chain.steps[i].id, chain.steps[j].id,
                   ViolationReason::incompatible_contexts,
                   "agent '" + agent_i + "' measures " + to_string(obs_i) +
                       " in step '" + chain.steps[i].id + "' but " +
                       to_string(obs_j) + " in step '" + chain.steps[j].id +
                       "'"});
              return;
            }
  }();

  // Every distinct premise is one unconditioned proposition the chain must
  // hold at once.
  [&] {
    std::vector<Proposition> counted;
    for (std::size_t s = 0; s < chain.steps.size(); ++s) {
      const Proposition& premise = chain.steps[s].premise;
      if (std::find(counted.begin(), counted.end(), premise) != counted.end())
        continue;
      counted.push_back(premise);
      if (static_cast<int>(counted.size()) <= info_bound) continue;

      std::string producer = chain.steps[s].id;
      for (std::size_t t = s; t-- > 0;) {
        const Proposition& concluded = chain.steps[t].conclusion;
        if (concluded.observable == premise.observable &&
            concluded.value == premise.value) {
          producer = chain.steps[t].id;
          break;
        }
      }
      std::string props;
      for (const Proposition& p : counted) {
        if (!props.empty()) props += ", ";
        props += to_string(p);
      }
      found.push_back(
          {producer, chain.steps[s].id,
           ViolationReason::information_bound_exceeded,
           "discharging the conditions requires " +
               std::to_string(counted.size()) + " unconditioned propositions (" +
               props + "), but the information bound is " +
               std::to_string(info_bound)});
      return;
    }
  }();

  // Two axes of one subsystem stay incompatible even when different agents
  // hold them.
  [&] {
    for (std::size_t i = 0; i < chain.steps.size(); ++i)
      for (std::size_t j = i + 1; j < chain.steps.size(); ++j)
        for (const auto& [agent_i, obs_i] : chain.steps[i].context.measured())
          for (const auto& [agent_j, obs_j] :
               chain.steps[j].context.measured())
            if (agent_i != agent_j && obs_i.scope == obs_j.scope &&
                obs_i.axis != obs_j.axis) {
              found.push_back(
                  {chain.steps[i].id, chain.steps[j].id,
                   ViolationReason::incompatible_contexts,
                   to_string(obs_i) + " (agent '" + agent_i + "') and " +
                       to_string(obs_j) + " (agent '" + agent_j +
                       "') are incompatible observables of one subsystem"});
              return;
            }
  }();

  if (found.empty()) return Verdict::ok();
  Verdict verdict;
  verdict.valid = false;
  verdict.violation = found.front();
  if (found.size() > 1) verdict.secondary_violation = found[1];
  return verdict;
}

DemoTrace hardy_demo() {
  QubitPairState state = hardy_state();
  std::vector<InferenceStep> steps;
  steps.emplace_back("i", Context({{"A", x_A}}), direct(x_A, Outcome::minus),
                     conditional(z_B, Outcome::minus, x_A, Outcome::minus),
                     std::pair(Basis::x(), Basis::z()));
  steps.emplace_back("ii", Context({{"B", z_B}}), direct(z_B, Outcome::minus),
                     conditional(z_A, Outcome::plus, z_B, Outcome::minus),
                     std::pair(Basis::z(), Basis::z()));
  steps.emplace_back("iii", Context({{"A", z_A}}), direct(z_A, Outcome::plus),
                     conditional(x_B, Outcome::plus, z_A, Outcome::plus),
                     std::pair(Basis::z(), Basis::x()));
  ReasoningChain chain = make_chain(std::move(steps));

  DemoTrace trace{"hardy",  state, chain, {}, Verdict::ok(), std::nullopt, {}};
  for (const InferenceStep& step : trace.chain.steps)
    trace.step_verdicts.push_back(validate_step(step, state));
  trace.chain_verdict = validate_chain(trace.chain, state, 2);
  trace.counterexample_probability =
      born(state, Basis::x(), Basis::x())
          .probability(Outcome::minus, Outcome::minus);
  return trace;
}

DemoTrace fr_demo() {
  QubitPairState state = hardy_state();
  std::vector<InferenceStep> steps;
  steps.emplace_back("A", Context({{"A", x_A}}), direct(x_A, Outcome::minus),
                     conditional(z_B, Outcome::minus, x_A, Outcome::minus),
                     std::pair(Basis::x(), Basis::z()));
  steps.emplace_back("F_B", Context({{"F_B", z_B}}),
                     direct(z_B, Outcome::minus),
                     conditional(z_A, Outcome::plus, z_B, Outcome::minus),
                     std::pair(Basis::z(), Basis::z()));
  steps.emplace_back("F_A", Context({{"F_A", z_A}}),
                     direct(z_A, Outcome::plus),
                     conditional(x_B, Outcome::plus, z_A, Outcome::plus),
                     std::pair(Basis::z(), Basis::x()));
  ReasoningChain chain = make_chain(std::move(steps));

  DemoTrace trace{"fr", state, chain, {}, Verdict::ok(), std::nullopt, {}};
  for (const InferenceStep& step : trace.chain.steps)
    trace.step_verdicts.push_back(validate_step(step, state));
  trace.chain_verdict = validate_chain(trace.chain, state, 2);
  trace.counterexample_probability =
      born(state, Basis::x(), Basis::x())
          .probability(Outcome::minus, Outcome::minus);
  return trace;
}

DemoTrace epr_demo() {
  QubitPairState state = singlet_state();
  std::vector<InferenceStep> steps;
  steps.emplace_back("x-round", Context({{"A", x_A}}),
                     direct(x_A, Outcome::plus),
                     conditional(x_B, Outcome::minus, x_A, Outcome::plus),
                     std::pair(Basis::x(), Basis::x()));
  steps.emplace_back("z-round", Context({{"A", z_A}}),
                     direct(z_A, Outcome::plus),
                     conditional(z_B, Outcome::minus, z_A, Outcome::plus),
                     std::pair(Basis::z(), Basis::z()));

  // The fused claim drops the conditions entirely: an unconditional value
  // for x_B regardless of what happens at A.
  ReasoningChain chain{std::move(steps), direct(x_B, Outcome::minus)};

  DemoTrace trace{"epr", state, chain, {}, Verdict::ok(), std::nullopt, {}};
  for (const InferenceStep& step : trace.chain.steps)
    trace.step_verdicts.push_back(validate_step(step, state));
  trace.chain_verdict = validate_chain(trace.chain, state, 2);

  EpistemicState product(SystemKind::bipartite,
                         {direct(x_A, Outcome::plus), direct(x_B, Outcome::minus)});
  EpistemicState correlated(SystemKind::bipartite,
                            {direct(x_A, Outcome::plus),
                             direct(x_AB, Outcome::plus)});
  trace.counterfactuals.push_back(
      {"(x_A^+, x_B^-): vary x_A, hold x_B^-", product,
       direct(x_A, Outcome::plus), direct(x_B, Outcome::minus),
       supports_counterfactual(product, direct(x_A, Outcome::plus),
                               direct(x_B, Outcome::minus))});
  trace.counterfactuals.push_back(
      {"(x_A^+, x_AB^+): vary x_A, hold x_B^- | x_A^+", correlated,
       direct(x_A, Outcome::plus),
       conditional(x_B, Outcome::minus, x_A, Outcome::plus),
       supports_counterfactual(
           correlated, direct(x_A, Outcome::plus),
           conditional(x_B, Outcome::minus, x_A, Outcome::plus))});
  return trace;
}

}  // namespace horizon
