#include "horizon/quantum.hpp"

#include <cmath>
#include <stdexcept>

namespace horizon {

namespace {

constexpr double kNormTolerance = 1e-12;
constexpr double kZeroProbability = 1e-12;

Eigen::Matrix4cd kronecker(const Eigen::Matrix2cd& a,
                           const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

Axis axis_of(const Basis& basis) {
  switch (basis.kind) {
    case Basis::Kind::z:
      return Axis::z;
    case Basis::Kind::x:
      return Axis::x;
    case Basis::Kind::angle:
      throw std::domain_error(
          "angle bases name no toy observable; use x or z settings");
  }
  throw std::domain_error("unknown basis kind");
}

int amplitude_index(Outcome a, Outcome b) {
  return 2 * (a == Outcome::minus ? 1 : 0) + (b == Outcome::minus ? 1 : 0);
}

}  // namespace

Basis Basis::from_angle(double theta) {
  if (theta == 0.0) return z();
  if (theta == M_PI_2) return x();
  return {Kind::angle, theta};
}

std::string to_string(const Basis& basis) {
  switch (basis.kind) {
    case Basis::Kind::z:
      return "z";
    case Basis::Kind::x:
      return "x";
    case Basis::Kind::angle:
      return "angle(" + std::to_string(basis.theta) + ")";
  }
  throw std::invalid_argument("unknown basis kind");
}

Basis parse_basis(std::string_view text) {
  if (text == "z") return Basis::z();
  if (text == "x") return Basis::x();
  if (text.starts_with("angle(") && text.ends_with(")")) {
    std::string inner(text.substr(6, text.size() - 7));
    std::size_t used = 0;
    double theta = 0.0;
    try {
      theta = std::stod(inner, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("invalid basis '" + std::string(text) + "'");
    }
    if (used != inner.size())
      throw std::invalid_argument("invalid basis '" + std::string(text) + "'");
    return Basis::from_angle(theta);
  }
  throw std::invalid_argument("invalid basis '" + std::string(text) +
                              "': expected z, x or angle(<radians>)");
}

Eigen::Matrix2cd basis_matrix(const Basis& basis) {
  Eigen::Matrix2cd m;
  switch (basis.kind) {
    case Basis::Kind::z:
      m.setIdentity();
      return m;
    case Basis::Kind::x: {
      const double s = 1.0 / std::sqrt(2.0);
      m << s, s, s, -s;
      return m;
    }
    case Basis::Kind::angle: {
      const double c = std::cos(basis.theta / 2.0);
      const double s = std::sin(basis.theta / 2.0);
      m << c, -s, s, c;
      return m;
    }
  }
  throw std::invalid_argument("unknown basis kind");
}

QubitPairState::QubitPairState(Eigen::Vector4cd amplitudes_in, Basis a, Basis b)
    : amplitudes(std::move(amplitudes_in)), basis_a(a), basis_b(b) {
  double norm = amplitudes.squaredNorm();
  if (std::abs(norm - 1.0) > kNormTolerance)
    throw std::domain_error("state norm squared is " + std::to_string(norm) +
                            ", expected 1 within 1e-12");
}

QubitPairState hardy_state() {
  const double a = 1.0 / std::sqrt(3.0);
  return QubitPairState(Eigen::Vector4cd(a, a, a, 0.0), Basis::z(), Basis::z());
}

QubitPairState singlet_state() {
  const double a = 1.0 / std::sqrt(2.0);
  return QubitPairState(Eigen::Vector4cd(0.0, a, -a, 0.0), Basis::z(),
                        Basis::z());
}

QubitPairState change_basis(const QubitPairState& state, Basis target_a,
                            Basis target_b) {
  Eigen::Vector4cd in_z =
      kronecker(basis_matrix(state.basis_a), basis_matrix(state.basis_b)) *
      state.amplitudes;
  Eigen::Vector4cd out =
      kronecker(basis_matrix(target_a), basis_matrix(target_b)).adjoint() *
      in_z;
  return QubitPairState(std::move(out), target_a, target_b);
}

double OutcomeDistribution::probability(Outcome a, Outcome b) const {
  return probabilities(amplitude_index(a, b));
}

double OutcomeDistribution::marginal_a(Outcome a) const {
  return probability(a, Outcome::plus) + probability(a, Outcome::minus);
}

double OutcomeDistribution::marginal_b(Outcome b) const {
  return probability(Outcome::plus, b) + probability(Outcome::minus, b);
}

OutcomeDistribution born(const QubitPairState& state, Basis setting_a,
                         Basis setting_b) {
  QubitPairState in_setting = change_basis(state, setting_a, setting_b);
  return {in_setting.amplitudes.cwiseAbs2()};
}

std::vector<Proposition> certain_conditionals(const QubitPairState& state,
                                              Basis setting_a,
                                              Basis setting_b) {
  const ObservableId on_a{axis_of(setting_a), Scope::A};
  const ObservableId on_b{axis_of(setting_b), Scope::B};
  OutcomeDistribution dist = born(state, setting_a, setting_b);

  std::vector<Proposition> out;
  for (Outcome a : {Outcome::plus, Outcome::minus}) {
    if (dist.marginal_a(a) <= kZeroProbability) continue;
    for (Outcome b : {Outcome::plus, Outcome::minus})
      if (dist.probability(a, b) <= kZeroProbability)
        out.push_back(conditional(on_b, negated(b), on_a, a));
  }
  for (Outcome b : {Outcome::plus, Outcome::minus}) {
    if (dist.marginal_b(b) <= kZeroProbability) continue;
    for (Outcome a : {Outcome::plus, Outcome::minus})
      if (dist.probability(a, b) <= kZeroProbability)
        out.push_back(conditional(on_a, negated(a), on_b, b));
  }
  return out;
}

UNotReport u_not_fixed_point_check() {
  Eigen::Matrix2cd u_not;
  u_not << 0, 1, 1, 0;
  const double s = 1.0 / std::sqrt(2.0);

  struct Input {
    const char* label;
    Eigen::Vector2cd vector;
  };
  const Input inputs[] = {
      {"|1>", Eigen::Vector2cd(1.0, 0.0)},
      {"|-1>", Eigen::Vector2cd(0.0, 1.0)},
      {"(|1>+|-1>)/sqrt(2)", Eigen::Vector2cd(s, s)},
      {"(|1>-|-1>)/sqrt(2)", Eigen::Vector2cd(s, -s)},
  };

  UNotReport report;
  for (const Input& input : inputs) {
    UNotReport::Case entry;
    entry.label = input.label;
    entry.input = input.vector;
    entry.output = u_not * input.vector;
    std::complex<double> overlap = (entry.input.adjoint() * entry.output)(0);
    entry.invariant_up_to_phase = std::abs(std::abs(overlap) - 1.0) <= 1e-12;
    if (entry.invariant_up_to_phase) entry.phase = overlap;
    entry.probabilities_invariant =
        (entry.output.cwiseAbs2() - entry.input.cwiseAbs2()).cwiseAbs().maxCoeff() <=
        1e-12;
    report.cases.push_back(std::move(entry));
  }

  report.basis_states_swap =
      (report.cases[0].output - Eigen::Vector2cd(0.0, 1.0)).norm() <= 1e-12 &&
      (report.cases[1].output - Eigen::Vector2cd(1.0, 0.0)).norm() <= 1e-12;
  report.symmetric_superposition_fixed =
      report.cases[2].invariant_up_to_phase &&
      std::abs(report.cases[2].phase - std::complex<double>(1.0, 0.0)) <= 1e-12;
  report.antisymmetric_superposition_fixed =
      report.cases[3].invariant_up_to_phase &&
      std::abs(report.cases[3].phase - std::complex<double>(-1.0, 0.0)) <= 1e-12;
  return report;
}

double correlator(const QubitPairState& state, Basis setting_a,
                  Basis setting_b) {
  OutcomeDistribution dist = born(state, setting_a, setting_b);
  return dist.probability(Outcome::plus, Outcome::plus) +
         dist.probability(Outcome::minus, Outcome::minus) -
         dist.probability(Outcome::plus, Outcome::minus) -
         dist.probability(Outcome::minus, Outcome::plus);
}

double chsh_quantum(const QubitPairState& state, Basis a1, Basis a2, Basis b1,
                    Basis b2) {
  return correlator(state, a1, b1) + correlator(state, a1, b2) +
         correlator(state, a2, b1) - correlator(state, a2, b2);
}

bool equal_up_to_phase(const Eigen::Vector4cd& a, const Eigen::Vector4cd& b,
                       double tolerance) {
  Eigen::Index pivot = 0;
  a.cwiseAbs().maxCoeff(&pivot);
  if (std::abs(a(pivot)) <= tolerance) return b.cwiseAbs().maxCoeff() <= tolerance;
  std::complex<double> phase = b(pivot) / a(pivot);
  if (std::abs(std::abs(phase) - 1.0) > tolerance) return false;
  return (b - phase * a).cwiseAbs().maxCoeff() <= tolerance;
}

}  // namespace horizon
