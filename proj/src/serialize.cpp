#include "horizon/serialize.hpp"

#include <algorithm>

#include "horizon/io.hpp"
#include "horizon/rational.hpp"

namespace horizon {

namespace {

const Json& require_field(const Json& j, const char* name,
                          const std::string& where) {
  if (!j.is_object())
    throw ParseError(where + ": expected an object with field '" +
                     std::string(name) + "'");
  auto it = j.find(name);
  if (it == j.end())
    throw ParseError(where + ": missing field '" + std::string(name) + "'");
  return *it;
}

Outcome outcome_from_json(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || (j.get<int>() != 1 && j.get<int>() != -1))
    throw ParseError(where + ": outcome value must be 1 or -1");
  return outcome_from_int(j.get<int>());
}

ObservableId observable_from_json(const Json& j, const std::string& where) {
  if (!j.is_string())
    throw ParseError(where + ": observable must be a string such as \"x_A\"");
  try {
    return parse_observable(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(where + ": " + e.what());
  }
}

std::string observable_name(ObservableId id, bool single_system) {
  return single_system ? std::string(1, axis_char(id.axis)) : to_string(id);
}

Json violation_to_json(const Violation& violation) {
  Json j;
  j["steps"] = Json::array({violation.first_step, violation.second_step});
  j["reason"] = to_string(violation.reason);
  j["detail"] = violation.detail;
  return j;
}

Json basis_pair_to_json(const std::pair<Basis, Basis>& settings) {
  return Json::array({to_string(settings.first), to_string(settings.second)});
}

Basis basis_from_json(const Json& j, const std::string& where) {
  if (!j.is_string())
    throw ParseError(where + ": basis must be a string such as \"x\"");
  try {
    return parse_basis(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(where + ": " + e.what());
  }
}

}  // namespace

Json proposition_to_json(const Proposition& p, bool single_system) {
  Json j;
  j["observable"] = observable_name(p.observable, single_system);
  j["value"] = sign_of(p.value);
  if (p.condition) {
    Json c;
    c["observable"] = observable_name(p.condition->observable, single_system);
    c["value"] = sign_of(p.condition->value);
    j["condition"] = std::move(c);
  }
  return j;
}

Proposition proposition_from_json(const Json& j, const std::string& where) {
  Proposition p;
  p.observable = observable_from_json(require_field(j, "observable", where),
                                      where + ".observable");
  p.value = outcome_from_json(require_field(j, "value", where), where + ".value");
  if (j.contains("condition")) {
    const Json& c = j["condition"];
    Condition condition;
    condition.observable = observable_from_json(
        require_field(c, "observable", where + ".condition"),
        where + ".condition.observable");
    condition.value =
        outcome_from_json(require_field(c, "value", where + ".condition"),
                          where + ".condition.value");
    if (condition.observable == p.observable)
      throw ParseError(where + ": proposition conditions on itself");
    p.condition = condition;
  }
  return p;
}

Json state_to_json(const EpistemicState& state) {
  const bool single = state.system() == SystemKind::single;
  Json j;
  j["system"] = single ? "single" : "bipartite";
  Json props = Json::array();
  for (const Proposition& p : state.propositions())
    props.push_back(proposition_to_json(p, single));
  j["propositions"] = std::move(props);
  return j;
}

EpistemicState state_from_json(const Json& j, const std::string& where) {
  const Json& system = require_field(j, "system", where);
  SystemKind kind;
  if (system == "single")
    kind = SystemKind::single;
  else if (system == "bipartite")
    kind = SystemKind::bipartite;
  else
    throw ParseError(where + ".system: expected \"single\" or \"bipartite\"");

  const Json& props = require_field(j, "propositions", where);
  if (!props.is_array())
    throw ParseError(where + ".propositions: expected an array");
  std::vector<Proposition> parsed;
  for (std::size_t i = 0; i < props.size(); ++i)
    parsed.push_back(proposition_from_json(
        props[i], where + ".propositions[" + std::to_string(i) + "]"));
  try {
    return EpistemicState(kind, std::move(parsed));
  } catch (const std::domain_error& e) {
    throw ParseError(where + ": " + e.what());
  }
}

Json record_to_json(const MeasurementRecord& record) {
  const bool single = record.pre_state.system() == SystemKind::single;
  Json j;
  j["observable"] = observable_name(record.observable, single);
  j["outcome"] = sign_of(record.outcome);
  j["forced"] = record.forced;
  j["pre_state"] = state_to_json(record.pre_state);
  j["post_state"] = state_to_json(record.post_state);
  return j;
}

Json table_to_json(const MeasurementTable& table) {
  Json rows = Json::array();
  for (int r = 0; r < table.measurement_count(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < table.state_count(); ++c)
      row.push_back(table.entries()(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json fixed_point_report_to_json(const FixedPointReport& report) {
  Json j;
  j["alpha"] = report.alpha.name();
  Json derived = Json::array();
  for (int k = 0; k < report.derived.width(); ++k)
    derived.push_back(report.derived.outcomes(k));
  j["derived"] = std::move(derived);
  j["provenance"] = report.derived.provenance.to_string();
  Json rows = Json::array();
  for (const FixedPointReport::RowEntry& entry : report.rows) {
    Json row;
    row["row"] = entry.row;
    row["matches_derived"] = entry.matches_derived;
    row["diagonal"] = sign_of(entry.diagonal_value);
    row["alpha_of_diagonal"] = sign_of(entry.alpha_of_diagonal);
    row["equation_holds"] = entry.equation_holds;
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  j["matching_row"] =
      report.matching_row ? Json(*report.matching_row) : Json(nullptr);
  j["alpha_has_fixed_point"] = report.alpha_has_fixed_point;
  j["contradiction_certified"] = report.contradiction_certified;
  return j;
}

Json model_to_json(const HiddenVariableModel& model) {
  Json j = Json::array();
  for (int i = 1; i <= 16; ++i) j.push_back(to_string(model.probability(i)));
  return j;
}

HiddenVariableModel model_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 16)
    throw ParseError(where + ": expected an array of 16 rational strings");
  HiddenVariableModel::Vector p;
  for (std::size_t i = 0; i < 16; ++i) {
    const Json& cell = j[i];
    try {
      if (cell.is_string())
        p(static_cast<Eigen::Index>(i)) = parse_rational(cell.get<std::string>());
      else if (cell.is_number_integer())
        p(static_cast<Eigen::Index>(i)) = Rational(cell.get<long long>());
      else
        throw std::invalid_argument("expected a rational string");
    } catch (const std::invalid_argument& e) {
      throw ParseError(where + "[" + std::to_string(i) + "]: " + e.what());
    }
  }
  try {
    return HiddenVariableModel(std::move(p));
  } catch (const std::domain_error& e) {
    throw ParseError(where + ": " + e.what());
  }
}

Json quantum_state_to_json(const QubitPairState& state) {
  Json j;
  j["basis"] = Json::array(
      {to_string(state.basis_a), to_string(state.basis_b)});
  Json amplitudes = Json::array();
  for (int i = 0; i < 4; ++i)
    amplitudes.push_back(Json::array(
        {state.amplitudes(i).real(), state.amplitudes(i).imag()}));
  j["amplitudes"] = std::move(amplitudes);
  return j;
}

QubitPairState quantum_state_from_json(const Json& j,
                                       const std::string& where) {
  const Json& basis = require_field(j, "basis", where);
  if (!basis.is_array() || basis.size() != 2)
    throw ParseError(where + ".basis: expected an array of two basis names");
  Basis basis_a = basis_from_json(basis[0], where + ".basis[0]");
  Basis basis_b = basis_from_json(basis[1], where + ".basis[1]");

  const Json& amplitudes = require_field(j, "amplitudes", where);
  if (!amplitudes.is_array() || amplitudes.size() != 4)
    throw ParseError(where +
                     ".amplitudes: expected an array of four [re, im] pairs");
  Eigen::Vector4cd parsed;
  for (std::size_t i = 0; i < 4; ++i) {
    const Json& cell = amplitudes[i];
    if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
        !cell[1].is_number())
      throw ParseError(where + ".amplitudes[" + std::to_string(i) +
                       "]: expected [re, im]");
    parsed(static_cast<Eigen::Index>(i)) = std::complex<double>(
        cell[0].get<double>(), cell[1].get<double>());
  }
  try {
    return QubitPairState(std::move(parsed), basis_a, basis_b);
  } catch (const std::domain_error& e) {
    throw ParseError(where + ": " + e.what());
  }
}

Json distribution_to_json(const OutcomeDistribution& dist) {
  Json j;
  j["++"] = dist.probabilities(0);
  j["+-"] = dist.probabilities(1);
  j["-+"] = dist.probabilities(2);
  j["--"] = dist.probabilities(3);
  return j;
}

Json unot_report_to_json(const UNotReport& report) {
  Json cases = Json::array();
  for (const UNotReport::Case& entry : report.cases) {
    Json c;
    c["label"] = entry.label;
    c["input"] = Json::array(
        {Json::array({entry.input(0).real(), entry.input(0).imag()}),
         Json::array({entry.input(1).real(), entry.input(1).imag()})});
    c["output"] = Json::array(
        {Json::array({entry.output(0).real(), entry.output(0).imag()}),
         Json::array({entry.output(1).real(), entry.output(1).imag()})});
    c["invariant_up_to_phase"] = entry.invariant_up_to_phase;
    if (entry.invariant_up_to_phase)
      c["phase"] = Json::array({entry.phase.real(), entry.phase.imag()});
    c["probabilities_invariant"] = entry.probabilities_invariant;
    cases.push_back(std::move(c));
  }
  Json j;
  j["cases"] = std::move(cases);
  j["basis_states_swap"] = report.basis_states_swap;
  j["symmetric_superposition_fixed"] = report.symmetric_superposition_fixed;
  j["antisymmetric_superposition_fixed"] =
      report.antisymmetric_superposition_fixed;
  return j;
}

Json verdict_to_json(const Verdict& verdict) {
  Json j;
  j["valid"] = verdict.valid;
  if (verdict.violation) j["violation"] = violation_to_json(*verdict.violation);
  if (verdict.secondary_violation)
    j["secondary_violation"] = violation_to_json(*verdict.secondary_violation);
  return j;
}

Json step_to_json(const InferenceStep& step) {
  Json j;
  j["id"] = step.id;
  Json context = Json::object();
  for (const auto& [agent, obs] : step.context.measured())
    context[agent] = to_string(obs);
  j["context"] = std::move(context);
  j["premise"] = proposition_to_json(step.premise);
  j["conclusion"] = proposition_to_json(step.conclusion);
  j["source"] = basis_pair_to_json(step.source);
  return j;
}

InferenceStep step_from_json(const Json& j, const std::string& where) {
  const Json& id = require_field(j, "id", where);
  if (!id.is_string()) throw ParseError(where + ".id: expected a string");

  const Json& context_json = require_field(j, "context", where);
  if (!context_json.is_object())
    throw ParseError(where +
                     ".context: expected an object mapping agents to "
                     "observables");
  std::vector<Context::Entry> measured;
  for (const auto& [agent, obs] : context_json.items())
    measured.emplace_back(
        agent, observable_from_json(obs, where + ".context." + agent));

  Proposition premise = proposition_from_json(
      require_field(j, "premise", where), where + ".premise");
  Proposition conclusion = proposition_from_json(
      require_field(j, "conclusion", where), where + ".conclusion");

  const Json& source = require_field(j, "source", where);
  if (!source.is_array() || source.size() != 2)
    throw ParseError(where + ".source: expected an array of two basis names");
  std::pair<Basis, Basis> settings{
      basis_from_json(source[0], where + ".source[0]"),
      basis_from_json(source[1], where + ".source[1]")};

  try {
    return InferenceStep(id.get<std::string>(), Context(std::move(measured)),
                         std::move(premise), std::move(conclusion),
                         std::move(settings));
  } catch (const std::invalid_argument& e) {
    throw ParseError(where + ": " + e.what());
  }
}

ReasoningChain chain_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty())
    throw ParseError(where + ": expected a nonempty array of steps");
  std::vector<InferenceStep> steps;
  for (std::size_t i = 0; i < j.size(); ++i)
    steps.push_back(
        step_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return make_chain(std::move(steps));
}

Json chain_to_json(const ReasoningChain& chain) {
  Json steps = Json::array();
  for (const InferenceStep& step : chain.steps)
    steps.push_back(step_to_json(step));
  return steps;
}

Json trace_to_json(const DemoTrace& trace) {
  Json j;
  j["name"] = trace.name;
  j["state"] = quantum_state_to_json(trace.state);
  Json steps = Json::array();
  for (std::size_t i = 0; i < trace.chain.steps.size(); ++i) {
    Json step = step_to_json(trace.chain.steps[i]);
    step["verdict"] = verdict_to_json(trace.step_verdicts.at(i));
    steps.push_back(std::move(step));
  }
  j["steps"] = std::move(steps);
  j["fused_conclusion"] = proposition_to_json(trace.chain.fused_conclusion);
  j["chain_verdict"] = verdict_to_json(trace.chain_verdict);
  if (trace.counterexample_probability)
    j["counterexample_probability"] = *trace.counterexample_probability;
  if (!trace.counterfactuals.empty()) {
    Json checks = Json::array();
    for (const CounterfactualCheck& check : trace.counterfactuals) {
      Json c;
      c["description"] = check.description;
      c["state"] = state_to_json(check.state);
      c["vary"] = proposition_to_json(check.vary);
      c["hold"] = proposition_to_json(check.hold);
      c["supported"] = check.supported;
      checks.push_back(std::move(c));
    }
    j["counterfactuals"] = std::move(checks);
  }
  return j;
}

Json parse_json(const std::string& text, const std::string& where) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(where + ": invalid JSON: " + e.what());
  }
}

}  // namespace horizon
