#pragma once

#include <stdexcept>
#include <string>

namespace bonsai {

// Contract violation by the caller: bad arguments, mismatched shapes,
// undeclared variables, missing required headers.
struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A guard on problem size was exceeded (reference implementations only).
struct limit_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Textual input could not be parsed; carries the position of the offense.
struct parse_error : std::runtime_error {
  int line;
  int column;
  parse_error(int line, int column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column "
                         + std::to_string(column) + ": " + what),
      line(line), column(column) {}
};

} // namespace bonsai
