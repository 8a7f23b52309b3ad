#include "horizon/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <stdexcept>

namespace horizon {

namespace {

using Integer = boost::multiprecision::cpp_int;

Integer parse_integer(std::string_view text, std::string_view whole) {
  bool negative = false;
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos == text.size())
    throw std::invalid_argument("invalid rational '" + std::string(whole) +
                                "'");
  Integer value = 0;
  for (; pos < text.size(); ++pos) {
    if (!std::isdigit(static_cast<unsigned char>(text[pos])))
      throw std::invalid_argument("invalid rational '" + std::string(whole) +
                                  "'");
    value = value * 10 + (text[pos] - '0');
  }
  return negative ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational literal");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash), text);
    Integer den = parse_integer(text.substr(slash + 1), text);
    if (den == 0)
      throw std::invalid_argument("zero denominator in '" + std::string(text) +
                                  "'");
    return Rational(num, den);
  }

  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view head = text.substr(0, dot);
    std::string_view tail = text.substr(dot + 1);
    if (tail.empty() || tail.find_first_not_of("0123456789") !=
                            std::string_view::npos)
      throw std::invalid_argument("invalid rational '" + std::string(text) +
                                  "'");
    bool negative = !head.empty() && head.front() == '-';
    Integer whole = head.empty() || head == "-" || head == "+"
                        ? Integer(0)
                        : parse_integer(head, text);
    Integer scale = 1;
    Integer frac = 0;
    for (char c : tail) {
      scale *= 10;
      frac = frac * 10 + (c - '0');
    }
    Integer numerator = boost::multiprecision::abs(whole) * scale + frac;
    if (negative || whole < 0) numerator = -numerator;
    return Rational(numerator, scale);
  }

  return Rational(parse_integer(text, text));
}

std::string to_string(const Rational& value) { return value.str(); }

double to_double(const Rational& value) {
  return value.template convert_to<double>();
}

}  // namespace horizon
