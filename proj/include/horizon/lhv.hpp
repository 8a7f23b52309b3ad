#pragma once

#include <Eigen/Core>
#include <array>
#include <boost/multiprecision/eigen.hpp>
#include <optional>
#include <utility>
#include <vector>

#include "horizon/proposition.hpp"
#include "horizon/rational.hpp"

namespace horizon {

/// One deterministic assignment of values to (x_A, z_A, x_B, z_B). The
/// sixteen of them are indexed 1..16 lexicographically with +1 before -1,
/// x_A most significant.
struct LambdaState {
  int index = 0;
  Outcome x_a, z_a, x_b, z_b;

  static LambdaState from_index(int index);  // throws std::out_of_range

  /// Value of a direct x/z observable on A or B; anything else is a
  /// std::domain_error.
  Outcome value(ObservableId obs) const;
};

const std::array<LambdaState, 16>& lambda_states();

/// Exact probability distribution over the sixteen deterministic
/// assignments.
class HiddenVariableModel {
 public:
  using Vector = Eigen::Matrix<Rational, 16, 1>;

  /// Validates p_i >= 0 and sum = 1 exactly; throws std::domain_error.
  explicit HiddenVariableModel(Vector probabilities);

  static HiddenVariableModel uniform();
  static HiddenVariableModel point_mass(int index);  // 1-based

  const Rational& probability(int index) const;  // 1-based, throws
  const Vector& probabilities() const { return p_; }

  friend bool operator==(const HiddenVariableModel& a,
                         const HiddenVariableModel& b) {
    return a.p_ == b.p_;
  }

 private:
  Vector p_;
};

using Assignment = std::vector<std::pair<ObservableId, Outcome>>;

/// Exact probability that every assigned observable takes its stated value.
/// Keys must be distinct members of {x_A, z_A, x_B, z_B}; violations are
/// std::domain_error. The empty assignment has probability 1.
Rational marginal(const HiddenVariableModel& model,
                  const Assignment& assignment);

/// Exact <a b> = sum over lambda of p_i * a(lambda_i) * b(lambda_i).
/// Requires one observable on A and one on B; std::domain_error otherwise.
Rational expectation(const HiddenVariableModel& model, ObservableId on_a,
                     ObservableId on_b);

/// The four correlators (<x_A x_B>, <x_A z_B>, <z_A x_B>, <z_A z_B>), each
/// validated into [-1, 1].
struct CorrelationSet {
  Rational xx, xz, zx, zz;

  CorrelationSet(Rational xx, Rational xz, Rational zx, Rational zz);

  friend bool operator==(const CorrelationSet&, const CorrelationSet&) =
      default;
};

CorrelationSet correlations(const HiddenVariableModel& model);

/// <x_A x_B> + <x_A z_B> + <z_A x_B> - <z_A z_B>, exact.
Rational chsh(const CorrelationSet& c);
Rational chsh(const HiddenVariableModel& model);

/// One signed CHSH combination: sum of signs[i] * correlator[i].
struct ChshVariant {
  std::array<int, 4> signs;
  Rational value;

  /// e.g. "+<x_A x_B> +<x_A z_B> +<z_A x_B> -<z_A z_B>".
  std::string expression() const;
};

/// All eight sign patterns with an odd number of minus signs; these are the
/// facets of the correlation polytope, so max value <= 2 is equivalent to
/// feasibility.
std::array<ChshVariant, 8> chsh_variants(const CorrelationSet& c);

/// A model reproducing the four correlators exactly, or absent when none
/// exists. The eight CHSH combinations are checked first as an exact
/// infeasibility certificate; a closed-form product model is tried next and
/// exact linear feasibility over the sixteen-vertex simplex settles the
/// rest.
std::optional<HiddenVariableModel> feasible(const CorrelationSet& c);

namespace detail {

/// Exact phase-one simplex on the equality system, no shortcut checks.
/// Exposed so tests can cross-validate the CHSH-variant certificate.
std::optional<HiddenVariableModel> feasible_by_simplex(const CorrelationSet& c);

/// p_i = (1 + sum_c c * sign_c(i)) / 16 when nonnegative.
std::optional<HiddenVariableModel> product_form_model(const CorrelationSet& c);

}  // namespace detail

}  // namespace horizon
