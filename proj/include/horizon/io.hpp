#pragma once

#include <stdexcept>
#include <string>

namespace horizon {

/// Raised for malformed input files. Messages name the offending path, line
/// or field so the CLI can surface them directly.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& message)
      : std::runtime_error(message) {}
};

/// Reads a whole file; throws ParseError naming the path when unreadable.
std::string read_file(const std::string& path);

}  // namespace horizon
