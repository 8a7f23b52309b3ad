#pragma once

#include <json.hpp>
#include <string>

#include "horizon/context.hpp"
#include "horizon/lhv.hpp"
#include "horizon/measurement_table.hpp"
#include "horizon/quantum.hpp"
#include "horizon/toy_state.hpp"

namespace horizon {

/// Ordered JSON keeps key order stable, which the CLI's byte-determinism
/// contract relies on.
using Json = nlohmann::ordered_json;

/// `where` strings name the file or field for ParseError diagnostics.

Json proposition_to_json(const Proposition& p, bool single_system = false);
Proposition proposition_from_json(const Json& j, const std::string& where);

Json state_to_json(const EpistemicState& state);
EpistemicState state_from_json(const Json& j, const std::string& where);

Json record_to_json(const MeasurementRecord& record);

Json table_to_json(const MeasurementTable& table);

Json fixed_point_report_to_json(const FixedPointReport& report);

Json model_to_json(const HiddenVariableModel& model);
HiddenVariableModel model_from_json(const Json& j, const std::string& where);

Json quantum_state_to_json(const QubitPairState& state);
QubitPairState quantum_state_from_json(const Json& j, const std::string& where);

Json distribution_to_json(const OutcomeDistribution& dist);

Json unot_report_to_json(const UNotReport& report);

Json verdict_to_json(const Verdict& verdict);

Json step_to_json(const InferenceStep& step);
InferenceStep step_from_json(const Json& j, const std::string& where);

/// Chain files are bare JSON arrays of steps.
ReasoningChain chain_from_json(const Json& j, const std::string& where);
Json chain_to_json(const ReasoningChain& chain);

Json trace_to_json(const DemoTrace& trace);

/// Parses a JSON document, rethrowing malformed input as ParseError naming
/// `where`.
Json parse_json(const std::string& text, const std::string& where);

}  // namespace horizon
