#include "horizon/toy_state.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <tuple>

namespace horizon {

namespace {

void validate_observable(SystemKind system, ObservableId obs) {
  if (system == SystemKind::single) {
    if (obs.scope != Scope::A)
      throw std::domain_error("observable " + to_string(obs) +
                              " refers to a subsystem, but the state is a "
                              "single system");
    return;
  }
  if (obs.axis == Axis::y)
    throw std::domain_error(
        "y-axis observables have no bipartite correlation structure and are "
        "not available in bipartite states");
}

int slot(ObservableId obs) {
  int axis = obs.axis == Axis::x ? 0 : obs.axis == Axis::z ? 1 : 2;
  int scope = obs.scope == Scope::A ? 0 : obs.scope == Scope::B ? 1 : 2;
  return axis * 3 + scope;
}

constexpr std::array<ObservableId, 9> slot_ids{
    ObservableId{Axis::x, Scope::A}, ObservableId{Axis::x, Scope::B},
    ObservableId{Axis::x, Scope::AB}, ObservableId{Axis::z, Scope::A},
    ObservableId{Axis::z, Scope::B}, ObservableId{Axis::z, Scope::AB},
    ObservableId{Axis::y, Scope::A}, ObservableId{Axis::y, Scope::B},
    ObservableId{Axis::y, Scope::AB}};

struct Closure {
  std::array<std::optional<Outcome>, 9> values;
  bool consistent = true;

  std::optional<Outcome> at(ObservableId obs) const { return values[slot(obs)]; }
};

void assign(Closure& c, ObservableId obs, Outcome v) {
  auto& cell = c.values[slot(obs)];
  if (cell && *cell != v) c.consistent = false;
  cell = v;
}

/// Direct and correlation propositions, saturated under the per-axis rule
/// that any two of {a_A, a_B, a_AB} determine the third.
Closure close_over(const std::vector<Proposition>& props) {
  Closure c;
  for (const Proposition& p : props) assign(c, p.observable, p.value);
  for (Axis axis : {Axis::x, Axis::z}) {
    auto& a = c.values[slot({axis, Scope::A})];
    auto& b = c.values[slot({axis, Scope::B})];
    auto& ab = c.values[slot({axis, Scope::AB})];
    int known = int(a.has_value()) + int(b.has_value()) + int(ab.has_value());
    if (known == 2) {
      if (!ab)
        ab = xor_outcome(*a, *b);
      else if (!b)
        b = xor_outcome(*a, *ab);
      else
        a = xor_outcome(*b, *ab);
    } else if (known == 3 && *ab != xor_outcome(*a, *b)) {
      c.consistent = false;
    }
  }
  return c;
}

int independent_bits(const Closure& c) {
  int bits = 0;
  for (Axis axis : {Axis::x, Axis::z}) {
    int known = 0;
    for (Scope scope : {Scope::A, Scope::B, Scope::AB})
      known += int(c.values[slot({axis, scope})].has_value());
    bits += known >= 3 ? 2 : known;
  }
  bits += int(c.values[slot({Axis::y, Scope::A})].has_value());
  return bits;
}

bool same_subsystem_other_axis(ObservableId stored, ObservableId measured) {
  return stored.scope == measured.scope && stored.axis != measured.axis;
}

/// A stored proposition shares an axis-dependency with a new one when some
/// subsystem occurs in both but the axes differ (scope AB involves both
/// subsystems).
bool shares_axis_dependency(ObservableId stored, ObservableId measured) {
  if (stored.axis == measured.axis) return false;
  if (stored.scope == Scope::AB || measured.scope == Scope::AB) return true;
  return stored.scope == measured.scope;
}

std::tuple<int, int, int> sort_key(const Proposition& p) {
  return {slot(p.observable), sign_of(p.value), 0};
}

}  // namespace

EpistemicState EpistemicState::single() {
  return EpistemicState(SystemKind::single, {});
}

EpistemicState EpistemicState::bipartite() {
  return EpistemicState(SystemKind::bipartite, {});
}

EpistemicState::EpistemicState(SystemKind system,
                               std::vector<Proposition> propositions)
    : system_(system) {
  // Direct and correlation propositions first, skipping anything already
  // entailed, so the stored set stays a minimal generating set.
  for (const Proposition& p : propositions) {
    if (!p.is_direct()) continue;
    validate_observable(system_, p.observable);
    Closure c = close_over(props_);
    if (auto held = c.at(p.observable)) {
      if (*held != p.value)
        throw std::domain_error("proposition " + to_string(p) +
                                " contradicts the state's entailed value");
      continue;
    }
    for (const Proposition& q : props_)
      if (q.observable.scope != Scope::AB && p.observable.scope != Scope::AB &&
          same_subsystem_other_axis(q.observable, p.observable))
        throw std::domain_error("propositions " + to_string(q) + " and " +
                                to_string(p) +
                                " give one subsystem two definite axes");
    props_.push_back(p);
  }

  // Conditional propositions rewrite to the correlation bit they carry.
  for (const Proposition& p : propositions) {
    if (p.is_direct()) continue;
    if (system_ == SystemKind::single)
      throw std::domain_error(
          "conditional propositions are only meaningful between subsystems");
    const Condition& cond = *p.condition;
    validate_observable(system_, p.observable);
    validate_observable(system_, cond.observable);
    if (p.observable.axis != cond.observable.axis ||
        p.observable.scope == Scope::AB || cond.observable.scope == Scope::AB ||
        p.observable.scope == cond.observable.scope)
      throw std::domain_error(
          "conditional proposition " + to_string(p) +
          " does not relate the two subsystems on one axis");
    Closure c = close_over(props_);
    auto held = c.at(cond.observable);
    if (!held || *held != cond.value)
      throw std::domain_error("condition of " + to_string(p) +
                              " is not entailed by the state");
    Proposition corr =
        direct({p.observable.axis, Scope::AB}, xor_outcome(p.value, cond.value));
    if (auto existing = c.at(corr.observable)) {
      if (*existing != corr.value)
        throw std::domain_error("proposition " + to_string(p) +
                                " contradicts the state's entailed value");
      continue;
    }
    props_.push_back(corr);
  }

  Closure c = close_over(props_);
  if (!c.consistent)
    throw std::domain_error("propositions are inconsistent under XOR closure");
  if (independent_bits(c) > info_bound())
    throw std::domain_error("state holds " +
                            std::to_string(independent_bits(c)) +
                            " independent bits, bound is " +
                            std::to_string(info_bound()));
}

int EpistemicState::independent_count() const {
  return independent_bits(close_over(props_));
}

bool operator==(const EpistemicState& a, const EpistemicState& b) {
  if (a.system_ != b.system_ || a.props_.size() != b.props_.size())
    return false;
  auto lhs = a.props_;
  auto rhs = b.props_;
  auto less = [](const Proposition& p, const Proposition& q) {
    return sort_key(p) < sort_key(q);
  };
  std::sort(lhs.begin(), lhs.end(), less);
  std::sort(rhs.begin(), rhs.end(), less);
  return lhs == rhs;
}

EpistemicState entangled_state() {
  return EpistemicState(SystemKind::bipartite,
                        {direct(x_AB, Outcome::plus), direct(z_AB, Outcome::plus)});
}

std::optional<Outcome> infer(const EpistemicState& state, ObservableId obs) {
  validate_observable(state.system(), obs);
  return close_over(state.propositions()).at(obs);
}

MeasurementRecord measure(const EpistemicState& state, ObservableId obs,
                          std::mt19937_64& rng) {
  validate_observable(state.system(), obs);
  if (auto held = infer(state, obs))
    return {obs, *held, state, state, true};

  Outcome outcome = (rng() & 1u) ? Outcome::plus : Outcome::minus;
  std::vector<Proposition> props = state.propositions();

  // A fresh direct result makes every other axis of the measured subsystem
  // undecidable; those propositions go unconditionally.
  if (obs.scope != Scope::AB)
    std::erase_if(props, [obs](const Proposition& p) {
      return same_subsystem_other_axis(p.observable, obs);
    });

  props.push_back(direct(obs, outcome));

  const int bound = state.info_bound();
  while (independent_bits(close_over(props)) > bound) {
    std::size_t victim = 0;
    for (std::size_t i = 0; i + 1 < props.size(); ++i)
      if (shares_axis_dependency(props[i].observable, obs)) {
        victim = i;
        break;
      }
    props.erase(props.begin() + static_cast<std::ptrdiff_t>(victim));
  }

  EpistemicState post(state.system(), std::move(props));
  return {obs, outcome, state, post, false};
}

namespace {

bool entails(const Closure& c, ObservableId obs, Outcome value) {
  auto held = c.at(obs);
  return held.has_value() && *held == value;
}

}  // namespace

bool supports_counterfactual(const EpistemicState& state,
                             const Proposition& vary, const Proposition& hold) {
  if (!vary.is_direct())
    throw std::domain_error("only direct propositions can be varied");
  validate_observable(state.system(), vary.observable);
  validate_observable(state.system(), hold.observable);

  const auto& props = state.propositions();
  bool vary_stored = std::find(props.begin(), props.end(), vary) != props.end();
  if (!vary_stored)
    throw std::domain_error("proposition " + to_string(vary) +
                            " is not part of the state's stored content");

  Closure full = close_over(props);
  if (hold.is_direct()) {
    if (!entails(full, hold.observable, hold.value))
      throw std::domain_error("proposition " + to_string(hold) +
                              " is not entailed by the state");
  } else {
    validate_observable(state.system(), hold.condition->observable);
    std::vector<Proposition> extended = props;
    extended.push_back(direct(hold.condition->observable, hold.condition->value));
    Closure sup = close_over(extended);
    if (!sup.consistent || !entails(sup, hold.observable, hold.value))
      throw std::domain_error("proposition " + to_string(hold) +
                              " is not derivable from the state under its "
                              "condition");
  }

  std::vector<Proposition> reduced = props;
  std::erase_if(reduced, [&vary](const Proposition& p) {
    return p.observable == vary.observable;
  });
  Closure c = close_over(reduced);

  if (hold.is_direct()) return entails(c, hold.observable, hold.value);

  // A conditional that conditions on the varied observable never survives.
  if (hold.condition->observable == vary.observable) return false;
  std::vector<Proposition> extended = reduced;
  extended.push_back(direct(hold.condition->observable, hold.condition->value));
  Closure sup = close_over(extended);
  return sup.consistent && entails(sup, hold.observable, hold.value);
}

}  // namespace horizon
