#include <CLI11.hpp>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "horizon/context.hpp"
#include "horizon/io.hpp"
#include "horizon/lhv.hpp"
#include "horizon/measurement_table.hpp"
#include "horizon/quantum.hpp"
#include "horizon/rational.hpp"
#include "horizon/serialize.hpp"
#include "horizon/toy_state.hpp"

namespace {

using namespace horizon;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

// Display-only: probabilities that sit within 1e-9 of a fraction with a
// small denominator are shown as that fraction next to the decimal.
std::string fmt_prob(double p) {
  for (long d = 1; d <= 1000; ++d) {
    double scaled = p * static_cast<double>(d);
    double nearest = std::round(scaled);
    if (std::abs(scaled - nearest) <= 1e-9 * static_cast<double>(d)) {
      long num = static_cast<long>(nearest);
      long g = std::gcd(std::labs(num), d);
      if (g == 0) g = 1;
      long rn = num / g;
      long rd = d / g;
      std::string exact = rd == 1 ? std::to_string(rn)
                                  : std::to_string(rn) + "/" + std::to_string(rd);
      return exact + " (" + fmt_double(p) + ")";
    }
  }
  return fmt_double(p);
}

std::string fmt_rational(const Rational& r) {
  return to_string(r) + " (" + fmt_double(to_double(r)) + ")";
}

std::string fmt_amplitude(std::complex<double> c) {
  if (std::abs(c.imag()) < 5e-7) return fmt_double(c.real());
  return fmt_double(c.real()) + (c.imag() < 0 ? " - " : " + ") +
         fmt_double(std::abs(c.imag())) + "i";
}

std::string settings_string(const Basis& a, const Basis& b) {
  return "(" + to_string(a) + ", " + to_string(b) + ")";
}

std::string props_string(const EpistemicState& state) {
  if (state.propositions().empty()) return "(empty)";
  const bool single = state.system() == SystemKind::single;
  std::string out;
  for (const Proposition& p : state.propositions()) {
    if (!out.empty()) out += ", ";
    out += to_string(p, single);
  }
  return out;
}

std::string row_string(const Eigen::RowVectorXi& row) {
  std::string out;
  for (Eigen::Index i = 0; i < row.size(); ++i)
    out += row(i) > 0 ? '+' : '-';
  return out;
}

void emit(const Json& doc) { std::cout << doc.dump(2) << "\n"; }

// ---------------------------------------------------------------- diagonal

int run_diagonal(const std::string& path, bool json) {
  MeasurementTable table = parse_table(read_file(path), path);
  FixedPointReport report = lawvere_check(table, OutcomeMap::negation());

  if (json) {
    Json doc;
    doc["table"] = table_to_json(table);
    doc["report"] = fixed_point_report_to_json(report);
    emit(doc);
    return 0;
  }

  std::cout << "table (" << table.measurement_count() << " measurements x "
            << table.state_count() << " states)\n";
  for (int n = 1; n <= table.measurement_count(); ++n)
    std::cout << "m" << n << ": " << row_string(table.row(n)) << "\n";

  std::string diag;
  for (int k = 0; k < report.derived.width(); ++k)
    diag += report.derived.outcomes(k) > 0 ? '+' : '-';
  std::cout << "negated diagonal: " << diag << "\n";

  if (report.matching_row)
    std::cout << "match report: row m" << *report.matching_row
              << " equals the negated diagonal\n";
  else
    std::cout << "match report: no row equals the negated diagonal\n";

  std::cout << "negation fixed point: "
            << (report.alpha_has_fixed_point ? "yes" : "no") << "\n";
  std::cout << "contradiction certified: "
            << (report.contradiction_certified ? "yes" : "no") << "\n";
  return 0;
}

// ----------------------------------------------------------------- toy-sim

int run_toy_sim(const std::string& path, std::uint64_t seed, bool json) {
  Json script = parse_json(read_file(path), path);
  if (!script.is_object())
    throw ParseError(path + ": expected an object with a \"measure\" array");

  SystemKind kind = SystemKind::bipartite;
  if (script.contains("system")) {
    const Json& system = script["system"];
    if (system == "single")
      kind = SystemKind::single;
    else if (system == "bipartite")
      kind = SystemKind::bipartite;
    else
      throw ParseError(path + ".system: expected \"single\" or \"bipartite\"");
  }

  EpistemicState state = kind == SystemKind::bipartite
                             ? entangled_state()
                             : EpistemicState::single();
  if (script.contains("initial")) {
    const Json& initial = script["initial"];
    if (initial.is_string() && initial == "entangled") {
      if (kind != SystemKind::bipartite)
        throw ParseError(path +
                         ".initial: \"entangled\" needs a bipartite system");
      state = entangled_state();
    } else if (initial.is_array()) {
      std::vector<Proposition> props;
      for (std::size_t i = 0; i < initial.size(); ++i)
        props.push_back(proposition_from_json(
            initial[i], path + ".initial[" + std::to_string(i) + "]"));
      try {
        state = EpistemicState(kind, std::move(props));
      } catch (const std::domain_error& e) {
        throw ParseError(path + ".initial: " + e.what());
      }
    } else {
      throw ParseError(path +
                       ".initial: expected \"entangled\" or an array of "
                       "propositions");
    }
  }

  if (!script.contains("measure") || !script["measure"].is_array())
    throw ParseError(path + ": missing \"measure\" array");
  std::vector<ObservableId> sequence;
  for (std::size_t i = 0; i < script["measure"].size(); ++i) {
    const Json& entry = script["measure"][i];
    if (!entry.is_string())
      throw ParseError(path + ".measure[" + std::to_string(i) +
                       "]: expected an observable string");
    try {
      sequence.push_back(parse_observable(entry.get<std::string>()));
    } catch (const std::invalid_argument& e) {
      throw ParseError(path + ".measure[" + std::to_string(i) + "]: " +
                       e.what());
    }
  }

  std::mt19937_64 rng(seed);
  const bool single = kind == SystemKind::single;
  for (ObservableId obs : sequence) {
    MeasurementRecord record = measure(state, obs, rng);
    state = record.post_state;
    if (json) {
      std::cout << record_to_json(record).dump() << "\n";
    } else {
      std::cout << "measure " << (single ? std::string(1, axis_char(obs.axis))
                                         : to_string(obs))
                << ": outcome " << outcome_char(record.outcome) << ", "
                << (record.forced ? "forced" : "sampled")
                << "; state: " << props_string(state) << "\n";
    }
  }
  return 0;
}

// -------------------------------------------------------------------- bell

Rational single_expectation(const HiddenVariableModel& model,
                            ObservableId obs) {
  return marginal(model, {{obs, Outcome::plus}}) -
         marginal(model, {{obs, Outcome::minus}});
}

Json exact_json(const Rational& r) {
  Json j;
  j["exact"] = to_string(r);
  j["decimal"] = to_double(r);
  return j;
}

int run_bell_model(const std::string& path, bool json) {
  HiddenVariableModel model =
      model_from_json(parse_json(read_file(path), path), path);
  CorrelationSet c = correlations(model);
  const Rational s = chsh(model);

  const std::array<std::pair<const char*, ObservableId>, 4> singles{
      {{"x_A", x_A}, {"z_A", z_A}, {"x_B", x_B}, {"z_B", z_B}}};
  const std::array<std::pair<const char*, const Rational*>, 4> pairs{
      {{"x_A x_B", &c.xx},
       {"x_A z_B", &c.xz},
       {"z_A x_B", &c.zx},
       {"z_A z_B", &c.zz}}};

  if (json) {
    Json doc;
    Json marginals;
    for (const auto& [name, obs] : singles)
      marginals[name] = exact_json(single_expectation(model, obs));
    doc["marginals"] = std::move(marginals);
    Json correls;
    for (const auto& [name, value] : pairs) correls[name] = exact_json(*value);
    doc["correlations"] = std::move(correls);
    doc["chsh"] = exact_json(s);
    emit(doc);
    return 0;
  }

  std::cout << "marginals:\n";
  for (const auto& [name, obs] : singles)
    std::cout << "  <" << name
              << "> = " << fmt_rational(single_expectation(model, obs))
              << "\n";
  std::cout << "correlations:\n";
  for (const auto& [name, value] : pairs)
    std::cout << "  <" << name << "> = " << fmt_rational(*value) << "\n";
  std::cout << "chsh = <x_A x_B> + <x_A z_B> + <z_A x_B> - <z_A z_B> = "
            << fmt_rational(s) << "\n";
  return 0;
}

int run_bell_correlations(const std::string& text, bool json) {
  std::vector<Rational> values;
  std::string item;
  std::stringstream stream(text);
  while (std::getline(stream, item, ','))
    values.push_back(parse_rational(item));
  if (values.size() != 4)
    throw ParseError("--correlations needs four comma-separated rationals");
  CorrelationSet c(values[0], values[1], values[2], values[3]);

  std::array<ChshVariant, 8> variants = chsh_variants(c);
  const ChshVariant* largest = &variants[0];
  for (const ChshVariant& v : variants)
    if (v.value > largest->value) largest = &v;

  std::optional<HiddenVariableModel> witness = feasible(c);

  if (json) {
    Json doc;
    Json correls;
    correls["x_A x_B"] = exact_json(c.xx);
    correls["x_A z_B"] = exact_json(c.xz);
    correls["z_A x_B"] = exact_json(c.zx);
    correls["z_A z_B"] = exact_json(c.zz);
    doc["correlations"] = std::move(correls);
    Json variant;
    variant["expression"] = largest->expression();
    variant["value"] = exact_json(largest->value);
    doc["largest_variant"] = std::move(variant);
    doc["feasible"] = witness.has_value();
    doc["witness"] = witness ? model_to_json(*witness) : Json(nullptr);
    emit(doc);
    return 0;
  }

  std::cout << "correlations: <x_A x_B> = " << fmt_rational(c.xx)
            << ", <x_A z_B> = " << fmt_rational(c.xz)
            << ", <z_A x_B> = " << fmt_rational(c.zx)
            << ", <z_A z_B> = " << fmt_rational(c.zz) << "\n";
  std::cout << "largest sign variant: " << largest->expression() << " = "
            << fmt_rational(largest->value) << "\n";
  if (witness) {
    std::cout << "feasible: yes\n";
    std::cout << "witness model:\n";
    for (int i = 1; i <= 16; ++i)
      std::cout << "  p" << i << " = " << fmt_rational(witness->probability(i))
                << "\n";
  } else {
    std::cout << "feasible: no\n";
    std::cout << "the largest variant exceeds 2, so no hidden-variable "
                 "distribution reproduces these correlators\n";
  }
  return 0;
}

// ---------------------------------------------------------------- verdicts

void print_verdict_lines(const Verdict& verdict) {
  std::cout << "chain verdict: " << (verdict.valid ? "valid" : "invalid")
            << "\n";
  if (verdict.violation)
    std::cout << "  violation (" << verdict.violation->first_step << ", "
              << verdict.violation->second_step
              << "): " << to_string(verdict.violation->reason) << "; "
              << verdict.violation->detail << "\n";
  if (verdict.secondary_violation)
    std::cout << "  secondary (" << verdict.secondary_violation->first_step
              << ", " << verdict.secondary_violation->second_step
              << "): " << to_string(verdict.secondary_violation->reason)
              << "; " << verdict.secondary_violation->detail << "\n";
}

void print_step_line(const InferenceStep& step, const Verdict& verdict) {
  std::string context;
  for (const auto& [agent, obs] : step.context.measured()) {
    if (!context.empty()) context += ", ";
    context += agent + ": " + to_string(obs);
  }
  std::cout << "step " << step.id << ": context {" << context << "}; "
            << to_string(step.premise) << " => " << to_string(step.conclusion)
            << "; source " << settings_string(step.source.first,
                                              step.source.second)
            << "; " << (verdict.valid ? "valid" : "invalid") << "\n";
  if (!verdict.valid && verdict.violation)
    std::cout << "  " << to_string(verdict.violation->reason) << "; "
              << verdict.violation->detail << "\n";
}

void print_trace_table(const DemoTrace& trace) {
  for (std::size_t i = 0; i < trace.chain.steps.size(); ++i)
    print_step_line(trace.chain.steps[i], trace.step_verdicts[i]);
  std::cout << "fused conclusion: " << to_string(trace.chain.fused_conclusion)
            << "\n";
  print_verdict_lines(trace.chain_verdict);
  if (trace.counterexample_probability)
    std::cout << "counterexample probability: "
              << fmt_prob(*trace.counterexample_probability) << "\n";
  for (const CounterfactualCheck& check : trace.counterfactuals)
    std::cout << "counterfactual " << check.description << " -> "
              << (check.supported ? "supported" : "not supported") << "\n";
}

// ------------------------------------------------------------------- hardy

int run_hardy(const std::optional<std::string>& settings, bool json) {
  QubitPairState state = hardy_state();

  std::vector<std::pair<Basis, Basis>> pairs;
  if (settings) {
    std::size_t comma = settings->find(',');
    if (comma == std::string::npos)
      throw ParseError("--settings needs two comma-separated bases");
    pairs.emplace_back(parse_basis(settings->substr(0, comma)),
                       parse_basis(settings->substr(comma + 1)));
  } else {
    pairs = {{Basis::z(), Basis::z()},
             {Basis::x(), Basis::z()},
             {Basis::z(), Basis::x()},
             {Basis::x(), Basis::x()}};
  }

  const double counterexample =
      born(state, Basis::x(), Basis::x())
          .probability(Outcome::minus, Outcome::minus);
  DemoTrace trace = hardy_demo();

  if (json) {
    Json doc;
    Json expansions = Json::array();
    for (const auto& [a, b] : pairs) {
      QubitPairState expanded = change_basis(state, a, b);
      Json entry;
      entry["settings"] = Json::array({to_string(a), to_string(b)});
      entry["amplitudes"] = quantum_state_to_json(expanded)["amplitudes"];
      entry["probabilities"] = distribution_to_json(born(state, a, b));
      if (a.kind != Basis::Kind::angle && b.kind != Basis::Kind::angle) {
        Json certain = Json::array();
        for (const Proposition& p : certain_conditionals(state, a, b))
          certain.push_back(proposition_to_json(p));
        entry["certain"] = std::move(certain);
      }
      expansions.push_back(std::move(entry));
    }
    doc["expansions"] = std::move(expansions);
    doc["counterexample_probability"] = counterexample;
    doc["demo"] = trace_to_json(trace);
    emit(doc);
    return 0;
  }

  for (const auto& [a, b] : pairs) {
    QubitPairState expanded = change_basis(state, a, b);
    std::cout << "settings " << settings_string(a, b) << ": amplitudes [";
    for (int i = 0; i < 4; ++i)
      std::cout << (i ? ", " : "") << fmt_amplitude(expanded.amplitudes(i));
    std::cout << "]\n";
    OutcomeDistribution dist = born(state, a, b);
    std::cout << "  P(++) = " << fmt_prob(dist.probabilities(0))
              << "  P(+-) = " << fmt_prob(dist.probabilities(1))
              << "  P(-+) = " << fmt_prob(dist.probabilities(2))
              << "  P(--) = " << fmt_prob(dist.probabilities(3)) << "\n";
    if (a.kind != Basis::Kind::angle && b.kind != Basis::Kind::angle) {
      std::vector<Proposition> certain = certain_conditionals(state, a, b);
      std::cout << "  certain: ";
      if (certain.empty()) {
        std::cout << "none";
      } else {
        for (std::size_t i = 0; i < certain.size(); ++i)
          std::cout << (i ? ", " : "") << to_string(certain[i]);
      }
      std::cout << "\n";
    }
  }
  std::cout << "P(x_A^-, x_B^-) = " << fmt_prob(counterexample) << "\n\n";
  print_trace_table(trace);
  return 0;
}

// ----------------------------------------------------------------- fr, epr

int run_trace(const DemoTrace& trace, bool json) {
  if (json) {
    emit(trace_to_json(trace));
    return 0;
  }
  print_trace_table(trace);
  return 0;
}

// ---------------------------------------------------------------- validate

int run_validate(const std::string& chain_path,
                 const std::optional<std::string>& state_path, int info_bound,
                 bool json) {
  ReasoningChain chain =
      chain_from_json(parse_json(read_file(chain_path), chain_path),
                      chain_path);
  QubitPairState state =
      state_path ? quantum_state_from_json(
                       parse_json(read_file(*state_path), *state_path),
                       *state_path)
                 : hardy_state();

  std::vector<Verdict> step_verdicts;
  for (const InferenceStep& step : chain.steps)
    step_verdicts.push_back(validate_step(step, state));
  Verdict verdict = validate_chain(chain, state, info_bound);

  if (json) {
    Json doc;
    Json steps = Json::array();
    for (std::size_t i = 0; i < chain.steps.size(); ++i) {
      Json entry = step_to_json(chain.steps[i]);
      entry["verdict"] = verdict_to_json(step_verdicts[i]);
      steps.push_back(std::move(entry));
    }
    doc["steps"] = std::move(steps);
    doc["fused_conclusion"] = proposition_to_json(chain.fused_conclusion);
    doc["verdict"] = verdict_to_json(verdict);
    emit(doc);
    return 0;
  }

  for (std::size_t i = 0; i < chain.steps.size(); ++i)
    print_step_line(chain.steps[i], step_verdicts[i]);
  std::cout << "fused conclusion: " << to_string(chain.fused_conclusion)
            << "\n";
  print_verdict_lines(verdict);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Dichotomic-measurement toolkit: diagonal escape on outcome tables, "
      "bounded-memory toy states, hidden-variable polytopes, two-qubit "
      "statistics, and inference-chain audits"};
  app.require_subcommand(1);

  std::string format = "table";
  auto add_format = [&format](CLI::App* sub) {
    sub->add_option("--output-format", format,
                    "Output format: table or json (default table)")
        ->check(CLI::IsMember({"table", "json"}));
  };

  std::string diag_path;
  CLI::App* diagonal = app.add_subcommand(
      "diagonal", "Negated-diagonal argument on a measurement table");
  diagonal->add_option("table", diag_path, "Table file: +/- grid or JSON matrix")
      ->required();
  add_format(diagonal);

  std::string script_path;
  std::uint64_t seed = 0;
  CLI::App* toy_sim = app.add_subcommand(
      "toy-sim", "Run a scripted measurement sequence on a toy state");
  toy_sim->add_option("--script", script_path, "Script JSON file")->required();
  toy_sim->add_option("--seed", seed, "RNG seed (default 0)");
  add_format(toy_sim);

  std::string model_path;
  std::string correlations_arg;
  CLI::App* bell = app.add_subcommand(
      "bell", "Hidden-variable model statistics or correlator feasibility");
  bell->add_option("model", model_path,
                   "Model file: JSON array of 16 rationals");
  bell->add_option("--correlations", correlations_arg,
                   "Four comma-separated rational correlators");
  add_format(bell);

  std::string settings_arg;
  bool settings_given = false;
  CLI::App* hardy = app.add_subcommand(
      "hardy", "Basis expansions and reasoning chain for the Hardy state");
  settings_given = false;
  hardy->add_option("--settings", settings_arg,
                    "Basis pair, e.g. x,z or angle(0.5),z");
  add_format(hardy);

  CLI::App* fr = app.add_subcommand(
      "fr", "Nested-agent reasoning chain against the two-bit horizon");
  add_format(fr);

  CLI::App* epr = app.add_subcommand(
      "epr", "Two valid rounds on the singlet and their invalid fusion");
  add_format(epr);

  std::string chain_path;
  std::string state_path;
  int info_bound = 2;
  CLI::App* validate =
      app.add_subcommand("validate", "Check a user-supplied inference chain");
  validate->add_option("--chain", chain_path, "Chain JSON file")->required();
  validate->add_option("--state", state_path,
                       "Two-qubit state JSON file (default: Hardy state)");
  validate->add_option("--info-bound", info_bound,
                       "Premise budget for a chain (default 2)")
      ->check(CLI::PositiveNumber);
  add_format(validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const bool json = format == "json";
  settings_given = hardy->count("--settings") > 0;

  try {
    if (diagonal->parsed()) return run_diagonal(diag_path, json);
    if (toy_sim->parsed()) return run_toy_sim(script_path, seed, json);
    if (bell->parsed()) {
      const bool has_model = bell->count("model") > 0;
      const bool has_correlations = bell->count("--correlations") > 0;
      if (has_model == has_correlations) {
        std::cerr << "error: bell needs exactly one of a model file or "
                     "--correlations\n";
        return 2;
      }
      return has_model ? run_bell_model(model_path, json)
                       : run_bell_correlations(correlations_arg, json);
    }
    if (hardy->parsed())
      return run_hardy(settings_given
                           ? std::optional<std::string>(settings_arg)
                           : std::nullopt,
                       json);
    if (fr->parsed()) return run_trace(fr_demo(), json);
    if (epr->parsed()) return run_trace(epr_demo(), json);
    if (validate->parsed())
      return run_validate(chain_path,
                          validate->count("--state") > 0
                              ? std::optional<std::string>(state_path)
                              : std::nullopt,
                          info_bound, json);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }

  std::cerr << "error: no subcommand selected\n";
  return 2;
}
