#include "horizon/lhv.hpp"

#include <set>
#include <stdexcept>

namespace horizon {

namespace {

Outcome bit_outcome(int index_zero_based, int bit) {
  return (index_zero_based >> bit) & 1 ? Outcome::minus : Outcome::plus;
}

void require_direct_xz(ObservableId obs, const char* role) {
  if (obs.scope == Scope::AB || obs.axis == Axis::y)
    throw std::domain_error(std::string(role) + " must be one of x_A, z_A, "
                            "x_B, z_B; got " + to_string(obs));
}

/// Sign of a(lambda) * b(lambda) for the four correlator columns, in the
/// CorrelationSet field order.
int correlator_sign(const LambdaState& l, int which) {
  switch (which) {
    case 0:
      return sign_of(l.x_a) * sign_of(l.x_b);
    case 1:
      return sign_of(l.x_a) * sign_of(l.z_b);
    case 2:
      return sign_of(l.z_a) * sign_of(l.x_b);
    default:
      return sign_of(l.z_a) * sign_of(l.z_b);
  }
}

}  // namespace

LambdaState LambdaState::from_index(int index) {
  if (index < 1 || index > 16)
    throw std::out_of_range("lambda index " + std::to_string(index) +
                            " out of range 1..16");
  int bits = index - 1;
  return {index, bit_outcome(bits, 3), bit_outcome(bits, 2),
          bit_outcome(bits, 1), bit_outcome(bits, 0)};
}

Outcome LambdaState::value(ObservableId obs) const {
  require_direct_xz(obs, "observable");
  if (obs.scope == Scope::A) return obs.axis == Axis::x ? x_a : z_a;
  return obs.axis == Axis::x ? x_b : z_b;
}

const std::array<LambdaState, 16>& lambda_states() {
  static const std::array<LambdaState, 16> states = [] {
    std::array<LambdaState, 16> out;
    for (int i = 1; i <= 16; ++i) out[i - 1] = LambdaState::from_index(i);
    return out;
  }();
  return states;
}

HiddenVariableModel::HiddenVariableModel(Vector probabilities)
    : p_(std::move(probabilities)) {
  Rational total = 0;
  for (int i = 0; i < 16; ++i) {
    if (p_(i) < 0)
      throw std::domain_error("p_" + std::to_string(i + 1) + " = " +
                              to_string(p_(i)) + " is negative");
    total += p_(i);
  }
  if (total != 1)
    throw std::domain_error("probabilities sum to " + to_string(total) +
                            ", expected 1");
}

HiddenVariableModel HiddenVariableModel::uniform() {
  Vector p;
  p.setConstant(Rational(1, 16));
  return HiddenVariableModel(p);
}

HiddenVariableModel HiddenVariableModel::point_mass(int index) {
  if (index < 1 || index > 16)
    throw std::out_of_range("lambda index " + std::to_string(index) +
                            " out of range 1..16");
  Vector p;
  p.setConstant(Rational(0));
  p(index - 1) = 1;
  return HiddenVariableModel(p);
}

const Rational& HiddenVariableModel::probability(int index) const {
  if (index < 1 || index > 16)
    throw std::out_of_range("lambda index " + std::to_string(index) +
                            " out of range 1..16");
  return p_(index - 1);
}

Rational marginal(const HiddenVariableModel& model,
                  const Assignment& assignment) {
  std::set<std::pair<Axis, Scope>> seen;
  for (const auto& [obs, value] : assignment) {
    require_direct_xz(obs, "assignment key");
    if (!seen.insert({obs.axis, obs.scope}).second)
      throw std::domain_error("duplicate observable " + to_string(obs) +
                              " in assignment");
  }
  Rational total = 0;
  for (const LambdaState& l : lambda_states()) {
    bool consistent = true;
    for (const auto& [obs, value] : assignment)
      if (l.value(obs) != value) {
        consistent = false;
        break;
      }
    if (consistent) total += model.probability(l.index);
  }
  return total;
}

Rational expectation(const HiddenVariableModel& model, ObservableId on_a,
                     ObservableId on_b) {
  require_direct_xz(on_a, "first observable");
  require_direct_xz(on_b, "second observable");
  if (on_a.scope != Scope::A || on_b.scope != Scope::B)
    throw std::domain_error(
        "expectation requires one observable on A and one on B; got " +
        to_string(on_a) + ", " + to_string(on_b));
  Rational total = 0;
  for (const LambdaState& l : lambda_states())
    total += Rational(sign_of(l.value(on_a)) * sign_of(l.value(on_b))) *
             model.probability(l.index);
  return total;
}

CorrelationSet::CorrelationSet(Rational xx_in, Rational xz_in, Rational zx_in,
                               Rational zz_in)
    : xx(std::move(xx_in)),
      xz(std::move(xz_in)),
      zx(std::move(zx_in)),
      zz(std::move(zz_in)) {
  const std::pair<const Rational*, const char*> entries[] = {
      {&xx, "<x_A x_B>"}, {&xz, "<x_A z_B>"}, {&zx, "<z_A x_B>"},
      {&zz, "<z_A z_B>"}};
  for (const auto& [value, name] : entries)
    if (*value < -1 || *value > 1)
      throw std::domain_error(std::string(name) + " = " + to_string(*value) +
                              " outside [-1, 1]");
}

CorrelationSet correlations(const HiddenVariableModel& model) {
  return {expectation(model, x_A, x_B), expectation(model, x_A, z_B),
          expectation(model, z_A, x_B), expectation(model, z_A, z_B)};
}

Rational chsh(const CorrelationSet& c) { return c.xx + c.xz + c.zx - c.zz; }

Rational chsh(const HiddenVariableModel& model) {
  return chsh(correlations(model));
}

std::string ChshVariant::expression() const {
  static const char* names[4] = {"<x_A x_B>", "<x_A z_B>", "<z_A x_B>",
                                 "<z_A z_B>"};
  std::string out;
  for (int i = 0; i < 4; ++i) {
    if (i > 0) out += ' ';
    out += signs[i] > 0 ? '+' : '-';
    out += names[i];
  }
  return out;
}

std::array<ChshVariant, 8> chsh_variants(const CorrelationSet& c) {
  const Rational values[4] = {c.xx, c.xz, c.zx, c.zz};
  std::array<ChshVariant, 8> out;
  std::size_t filled = 0;
  for (int mask = 0; mask < 16; ++mask) {
    int minus_count = __builtin_popcount(static_cast<unsigned>(mask));
    if (minus_count % 2 == 0) continue;
    ChshVariant v;
    v.value = 0;
    for (int i = 0; i < 4; ++i) {
      v.signs[i] = (mask >> i) & 1 ? -1 : +1;
      v.value += Rational(v.signs[i]) * values[i];
    }
    out[filled++] = std::move(v);
  }
  return out;
}

namespace detail {

namespace {

using MatrixXr = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using VectorXr = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

/// Exact phase-one simplex with Bland's rule: finds x >= 0 with A x = b or
/// reports infeasibility. Never cycles; unboundedness cannot occur because
/// the artificial objective is bounded below by zero.
std::optional<VectorXr> nonnegative_solution(MatrixXr A, VectorXr b) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  for (Eigen::Index r = 0; r < m; ++r)
    if (b(r) < 0) {
      A.row(r) = -A.row(r);
      b(r) = -b(r);
    }

  MatrixXr T(m, n + m);
  T.leftCols(n) = A;
  T.rightCols(m).setZero();
  for (Eigen::Index i = 0; i < m; ++i) T(i, n + i) = 1;
  VectorXr rhs = b;
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i)
    basis[static_cast<std::size_t>(i)] = n + i;

  // Reduced costs of the artificial-sum objective; artificial columns start
  // at zero because they are the basis.
  VectorXr reduced = VectorXr::Zero(n + m);
  for (Eigen::Index j = 0; j < n; ++j) reduced(j) = T.col(j).sum();
  Rational objective = rhs.sum();

  while (true) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n + m; ++j)
      if (reduced(j) > 0) {
        enter = j;
        break;
      }
    if (enter < 0) break;

    Eigen::Index leave = -1;
    Rational best_ratio;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (T(i, enter) <= 0) continue;
      Rational ratio = rhs(i) / T(i, enter);
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[static_cast<std::size_t>(i)] <
                                      basis[static_cast<std::size_t>(leave)])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) return std::nullopt;

    Rational pivot = T(leave, enter);
    T.row(leave) /= pivot;
    rhs(leave) /= pivot;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (i == leave || T(i, enter) == 0) continue;
      Rational factor = T(i, enter);
      T.row(i) -= factor * T.row(leave);
      rhs(i) -= factor * rhs(leave);
    }
    Rational factor = reduced(enter);
    reduced -= factor * T.row(leave).transpose();
    objective -= factor * rhs(leave);
    basis[static_cast<std::size_t>(leave)] = enter;
  }

  if (objective != 0) return std::nullopt;
  VectorXr x = VectorXr::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i)
    if (basis[static_cast<std::size_t>(i)] < n)
      x(basis[static_cast<std::size_t>(i)]) = rhs(i);
  return x;
}

}  // namespace

std::optional<HiddenVariableModel> feasible_by_simplex(
    const CorrelationSet& c) {
  MatrixXr A(5, 16);
  VectorXr b(5);
  for (int j = 0; j < 16; ++j) {
    const LambdaState& l = lambda_states()[static_cast<std::size_t>(j)];
    A(0, j) = 1;
    for (int row = 0; row < 4; ++row) A(row + 1, j) = correlator_sign(l, row);
  }
  b << Rational(1), c.xx, c.xz, c.zx, c.zz;

  auto x = nonnegative_solution(std::move(A), std::move(b));
  if (!x) return std::nullopt;
  HiddenVariableModel::Vector p;
  for (int i = 0; i < 16; ++i) p(i) = (*x)(i);
  return HiddenVariableModel(std::move(p));
}

std::optional<HiddenVariableModel> product_form_model(const CorrelationSet& c) {
  HiddenVariableModel::Vector p;
  const Rational values[4] = {c.xx, c.xz, c.zx, c.zz};
  for (const LambdaState& l : lambda_states()) {
    Rational entry = 1;
    for (int which = 0; which < 4; ++which)
      entry += Rational(correlator_sign(l, which)) * values[which];
    if (entry < 0) return std::nullopt;
    p(l.index - 1) = entry / 16;
  }
  return HiddenVariableModel(std::move(p));
}

}  // namespace detail

std::optional<HiddenVariableModel> feasible(const CorrelationSet& c) {
  for (const ChshVariant& v : chsh_variants(c))
    if (v.value > 2) return std::nullopt;
  if (auto model = detail::product_form_model(c)) return model;
  return detail::feasible_by_simplex(c);
}

}  // namespace horizon
