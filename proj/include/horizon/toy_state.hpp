#pragma once

#include <optional>
#include <random>
#include <vector>

#include "horizon/proposition.hpp"

namespace horizon {

enum class SystemKind : std::uint8_t { single, bipartite };

/// What an observer can hold about a toy system: at most one definite bit for
/// a single system, two for a bipartite one. Stored content is a canonical
/// generating set of direct and correlation propositions; everything else is
/// reachable through XOR closure (x_AB = x_A xor x_B per axis).
///
/// Conditional propositions are accepted as input and rewritten to the
/// equivalent correlation proposition (x_B^- given x_A^+ is one bit of
/// correlation, x_AB^+), so the rewrite never changes the information count.
class EpistemicState {
 public:
  /// Empty single-system state (one-bit bound).
  static EpistemicState single();

  /// Empty bipartite state (two-bit bound).
  static EpistemicState bipartite();

  /// Canonicalizes and validates. Throws std::domain_error when a
  /// proposition does not fit the system kind, when values are inconsistent
  /// under XOR closure, when two direct propositions give one subsystem two
  /// axes, when a conditional's condition is not entailed, or when the
  /// independent content exceeds the information bound.
  EpistemicState(SystemKind system, std::vector<Proposition> propositions);

  SystemKind system() const { return system_; }
  int info_bound() const { return system_ == SystemKind::single ? 1 : 2; }

  /// Canonical generating set, oldest first.
  const std::vector<Proposition>& propositions() const { return props_; }

  /// Number of independent definite bits currently held.
  int independent_count() const;

  /// Set equality of canonical content on the same system kind.
  friend bool operator==(const EpistemicState& a, const EpistemicState& b);

 private:
  SystemKind system_;
  std::vector<Proposition> props_;
};

/// The bipartite state holding exactly x_AB^+ and z_AB^+.
EpistemicState entangled_state();

/// Value entailed by XOR closure of the stored propositions, or absent.
/// Throws std::domain_error when `obs` is invalid for the system kind.
std::optional<Outcome> infer(const EpistemicState& state, ObservableId obs);

struct MeasurementRecord {
  ObservableId observable;
  Outcome outcome;
  EpistemicState pre_state;
  EpistemicState post_state;
  bool forced = false;  // outcome was already entailed before measuring
};

/// Measures `obs`. A definite observable returns its entailed value and
/// leaves the state unchanged. An undecidable one draws uniformly from the
/// caller's generator, stores the result, then evicts old propositions:
/// first every direct proposition giving the measured subsystem another
/// axis, then, while the information bound is exceeded, the oldest
/// proposition sharing an axis-dependency with the new one (same subsystem
/// involved, different axis), then the oldest remaining.
MeasurementRecord measure(const EpistemicState& state, ObservableId obs,
                          std::mt19937_64& rng);

/// True when `hold` stays entailed after the stored proposition matched by
/// `vary` is replaced with an arbitrary alternative. A conditional `hold`
/// whose condition is the varied observable is never supported. Throws
/// std::domain_error when `vary` is not stored content or `hold` is not
/// entailed (conditionals: derivable under their condition).
bool supports_counterfactual(const EpistemicState& state,
                             const Proposition& vary, const Proposition& hold);

}  // namespace horizon
