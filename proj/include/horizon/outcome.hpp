#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace horizon {

/// Dichotomic measurement outcome. +1 doubles as "true", -1 as "false".
enum class Outcome : std::int8_t { plus = +1, minus = -1 };

constexpr Outcome negated(Outcome o) {
  return o == Outcome::plus ? Outcome::minus : Outcome::plus;
}

constexpr int sign_of(Outcome o) { return o == Outcome::plus ? +1 : -1; }

constexpr bool truth_of(Outcome o) { return o == Outcome::plus; }

/// XOR in the +/-1 encoding: +1 exactly when the two outcomes differ.
/// Equivalent to -a*b on the underlying signs.
constexpr Outcome xor_outcome(Outcome a, Outcome b) {
  return a == b ? Outcome::minus : Outcome::plus;
}

constexpr Outcome and_outcome(Outcome a, Outcome b) {
  return (a == Outcome::plus && b == Outcome::plus) ? Outcome::plus
                                                    : Outcome::minus;
}

constexpr Outcome or_outcome(Outcome a, Outcome b) {
  return (a == Outcome::plus || b == Outcome::plus) ? Outcome::plus
                                                    : Outcome::minus;
}

/// Converts +1 or -1; anything else throws std::invalid_argument.
Outcome outcome_from_int(int value);

constexpr char outcome_char(Outcome o) { return o == Outcome::plus ? '+' : '-'; }

inline std::string outcome_string(Outcome o) {
  return o == Outcome::plus ? "+1" : "-1";
}

/// A self-map of the two-element outcome set. The negation map is the only
/// involution without a fixed point; identity and the two constant maps all
/// have one.
struct OutcomeMap {
  Outcome image_of_plus;
  Outcome image_of_minus;

  static constexpr OutcomeMap identity() {
    return {Outcome::plus, Outcome::minus};
  }
  static constexpr OutcomeMap negation() {
    return {Outcome::minus, Outcome::plus};
  }
  static constexpr OutcomeMap constant(Outcome v) { return {v, v}; }

  constexpr Outcome operator()(Outcome o) const {
    return o == Outcome::plus ? image_of_plus : image_of_minus;
  }

  constexpr bool fixes(Outcome o) const { return (*this)(o) == o; }

  constexpr bool has_fixed_point() const {
    return fixes(Outcome::plus) || fixes(Outcome::minus);
  }

  std::string name() const;

  friend constexpr bool operator==(const OutcomeMap&, const OutcomeMap&) =
      default;
};

/// All four self-maps of the outcome set, in a fixed enumeration order.
constexpr std::array<OutcomeMap, 4> all_outcome_maps() {
  return {OutcomeMap::identity(), OutcomeMap::negation(),
          OutcomeMap::constant(Outcome::plus),
          OutcomeMap::constant(Outcome::minus)};
}

}  // namespace horizon
