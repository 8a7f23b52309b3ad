#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include "horizon/outcome.hpp"

namespace horizon {

enum class Axis : std::uint8_t { x, y, z };

/// Which part of a system an observable refers to: one of the two
/// subsystems, or the joint correlation observable.
enum class Scope : std::uint8_t { A, B, AB };

struct ObservableId {
  Axis axis;
  Scope scope;

  friend constexpr auto operator<=>(const ObservableId&,
                                    const ObservableId&) = default;
};

inline constexpr ObservableId x_A{Axis::x, Scope::A};
inline constexpr ObservableId x_B{Axis::x, Scope::B};
inline constexpr ObservableId x_AB{Axis::x, Scope::AB};
inline constexpr ObservableId y_A{Axis::y, Scope::A};
inline constexpr ObservableId z_A{Axis::z, Scope::A};
inline constexpr ObservableId z_B{Axis::z, Scope::B};
inline constexpr ObservableId z_AB{Axis::z, Scope::AB};

char axis_char(Axis axis);

std::string to_string(ObservableId id);

/// Accepts "x_A", "z_AB", and bare single-system names "x", "y", "z"
/// (which resolve to scope A). Throws std::invalid_argument otherwise.
ObservableId parse_observable(std::string_view text);

struct Condition {
  ObservableId observable;
  Outcome value;

  friend constexpr bool operator==(const Condition&, const Condition&) =
      default;
};

/// A definite value for one observable. When `condition` is set the value is
/// only asserted relative to the conditioning observable having its stated
/// value.
struct Proposition {
  ObservableId observable;
  Outcome value;
  std::optional<Condition> condition;

  bool is_direct() const { return !condition.has_value(); }

  friend constexpr bool operator==(const Proposition&, const Proposition&) =
      default;
};

inline Proposition direct(ObservableId id, Outcome value) {
  return {id, value, std::nullopt};
}

/// Throws std::invalid_argument when target and conditioning observable
/// coincide.
Proposition conditional(ObservableId target, Outcome value,
                        ObservableId condition_on, Outcome condition_value);

/// "x_A^+", "x_B^- | x_A^+". Single-system observables print without the
/// scope suffix.
std::string to_string(const Proposition& p, bool single_system = false);

}  // namespace horizon
