#include "horizon/proposition.hpp"

#include <stdexcept>

namespace horizon {

char axis_char(Axis axis) {
  switch (axis) {
    case Axis::x:
      return 'x';
    case Axis::y:
      return 'y';
    case Axis::z:
      return 'z';
  }
  throw std::invalid_argument("unknown axis");
}

std::string to_string(ObservableId id) {
  std::string out(1, axis_char(id.axis));
  out += '_';
  switch (id.scope) {
    case Scope::A:
      out += 'A';
      break;
    case Scope::B:
      out += 'B';
      break;
    case Scope::AB:
      out += "AB";
      break;
  }
  return out;
}

ObservableId parse_observable(std::string_view text) {
  if (text.empty())
    throw std::invalid_argument("empty observable name");

  Axis axis;
  switch (text.front()) {
    case 'x':
      axis = Axis::x;
      break;
    case 'y':
      axis = Axis::y;
      break;
    case 'z':
      axis = Axis::z;
      break;
    default:
      throw std::invalid_argument("unknown observable '" + std::string(text) +
                                  "': axis must be x, y or z");
  }

  std::string_view rest = text.substr(1);
  if (rest.empty()) return {axis, Scope::A};
  if (rest == "_A") return {axis, Scope::A};
  if (rest == "_B") return {axis, Scope::B};
  if (rest == "_AB") return {axis, Scope::AB};
  throw std::invalid_argument("unknown observable '" + std::string(text) +
                              "': scope must be _A, _B or _AB");
}

Proposition conditional(ObservableId target, Outcome value,
                        ObservableId condition_on, Outcome condition_value) {
  if (target == condition_on)
    throw std::invalid_argument(
        "conditional proposition cannot condition " + to_string(target) +
        " on itself");
  return {target, value, Condition{condition_on, condition_value}};
}

std::string to_string(const Proposition& p, bool single_system) {
  auto name = [single_system](ObservableId id) {
    return single_system ? std::string(1, axis_char(id.axis)) : to_string(id);
  };
  std::string out = name(p.observable) + "^" + outcome_char(p.value);
  if (p.condition) {
    out += " | ";
    out += name(p.condition->observable) + "^" + outcome_char(p.condition->value);
  }
  return out;
}

}  // namespace horizon
