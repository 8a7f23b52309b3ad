#include "horizon/outcome.hpp"

#include <stdexcept>

namespace horizon {

Outcome outcome_from_int(int value) {
  if (value == 1) return Outcome::plus;
  if (value == -1) return Outcome::minus;
  throw std::invalid_argument("outcome must be +1 or -1, got " +
                              std::to_string(value));
}

std::string OutcomeMap::name() const {
  if (*this == identity()) return "identity";
  if (*this == negation()) return "negation";
  return std::string("constant(") + outcome_string(image_of_plus) + ")";
}

}  // namespace horizon
