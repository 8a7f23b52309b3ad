#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

namespace horizon {

/// Exact rational scalar used for all hidden-variable probability algebra.
using Rational = boost::multiprecision::cpp_rational;

/// Accepts integers ("3"), fractions ("-1/16") and finite decimals ("0.25"),
/// all parsed exactly. Throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

/// Canonical "n" or "n/d" rendering.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

}  // namespace horizon
