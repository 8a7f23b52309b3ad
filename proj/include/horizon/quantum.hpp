#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "horizon/proposition.hpp"

namespace horizon {

/// Single-qubit measurement basis: the computational z pair, the balanced
/// x pair (|z+> plus/minus |z->)/sqrt(2), or a rotation by an arbitrary
/// polar angle. angle(0) collapses to z and angle(pi/2) to x, which agree
/// with the rotation convention on every probability (the x pair differs
/// from the pi/2 rotation only by the sign of the minus ket).
struct Basis {
  enum class Kind : std::uint8_t { z, x, angle };

  Kind kind = Kind::z;
  double theta = 0.0;  // meaningful for Kind::angle

  static Basis z() { return {Kind::z, 0.0}; }
  static Basis x() { return {Kind::x, 0.0}; }
  static Basis from_angle(double theta);

  friend bool operator==(const Basis& a, const Basis& b) {
    return a.kind == b.kind && (a.kind != Kind::angle || a.theta == b.theta);
  }
};

std::string to_string(const Basis& basis);

/// Accepts "z", "x" and "angle(<radians>)". Throws std::invalid_argument.
Basis parse_basis(std::string_view text);

/// Columns are the basis kets |+> and |-> expressed in z coordinates.
Eigen::Matrix2cd basis_matrix(const Basis& basis);

/// Two-qubit pure state: amplitudes ordered (++, +-, -+, --) in the declared
/// product basis. The constructor enforces unit norm within 1e-12.
struct QubitPairState {
  Eigen::Vector4cd amplitudes;
  Basis basis_a;
  Basis basis_b;

  QubitPairState(Eigen::Vector4cd amplitudes, Basis basis_a, Basis basis_b);
};

/// (|z+ z+> + |z+ z-> + |z- z+>)/sqrt(3) in the (z, z) basis.
QubitPairState hardy_state();

/// (|z+ z-> - |z- z+>)/sqrt(2) in the (z, z) basis.
QubitPairState singlet_state();

/// Re-expresses the state in the target product basis. Unitary, so the norm
/// is preserved and the round trip restores the original amplitudes.
QubitPairState change_basis(const QubitPairState& state, Basis target_a,
                            Basis target_b);

struct OutcomeDistribution {
  Eigen::Vector4d probabilities;  // (++, +-, -+, --)

  double probability(Outcome a, Outcome b) const;
  double marginal_a(Outcome a) const;
  double marginal_b(Outcome b) const;
};

/// Squared magnitudes after change_basis to the measurement settings.
OutcomeDistribution born(const QubitPairState& state, Basis setting_a,
                         Basis setting_b);

/// Certainty rules read off zero joint probabilities: for each outcome a of
/// one side with nonzero marginal and each b on the other side with
/// P(a, b) = 0 (within 1e-12), emits (not-b on the other side, given a).
/// Settings must be x or z so the conditionals name toy observables;
/// angle settings raise std::domain_error.
std::vector<Proposition> certain_conditionals(const QubitPairState& state,
                                              Basis setting_a,
                                              Basis setting_b);

/// Record of applying the outcome-swap unitary to the basis kets and both
/// balanced superpositions.
struct UNotReport {
  struct Case {
    std::string label;
    Eigen::Vector2cd input;
    Eigen::Vector2cd output;
    bool invariant_up_to_phase = false;
    std::complex<double> phase{0.0, 0.0};  // set when invariant_up_to_phase
    bool probabilities_invariant = false;
  };

  std::vector<Case> cases;
  bool basis_states_swap = false;
  bool symmetric_superposition_fixed = false;   // phase +1
  bool antisymmetric_superposition_fixed = false;  // phase -1
};

UNotReport u_not_fixed_point_check();

/// E(a, b) = P(++) + P(--) - P(+-) - P(-+) under the given settings.
double correlator(const QubitPairState& state, Basis setting_a,
                  Basis setting_b);

/// E(a1,b1) + E(a1,b2) + E(a2,b1) - E(a2,b2).
double chsh_quantum(const QubitPairState& state, Basis a1, Basis a2, Basis b1,
                    Basis b2);

/// Equality modulo global phase, coefficient-wise within `tolerance`.
bool equal_up_to_phase(const Eigen::Vector4cd& a, const Eigen::Vector4cd& b,
                       double tolerance);

}  // namespace horizon
