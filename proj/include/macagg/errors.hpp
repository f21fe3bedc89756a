#pragma once

#include <stdexcept>
#include <string>

namespace macagg {

// Malformed textual input (trace files, scheme specs). Carries the position
// of the offending character, 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, size_t line, size_t column)
      : std::runtime_error(msg + " (line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  size_t line() const { return line_; }
  size_t column() const { return column_; }

 private:
  size_t line_, column_;
};

// A configuration that cannot be satisfied (e.g. dependency-table retry budget
// exhausted, tag larger than the payload). Maps to CLI exit code 2.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace macagg
