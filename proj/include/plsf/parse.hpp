#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "plsf/system.hpp"

namespace plsf {

/// Syntax or validation failure with 1-based source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, int line, int column)
      : std::runtime_error(message + " (line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ")"),
        line_(line),
        column_(column) {}
  explicit ParseError(std::string message) : std::runtime_error(std::move(message)) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_ = 0;
  int column_ = 0;
};

/// Parses an expression over the declared identifiers, `eps`, rational
/// literals a/b, +, -, *, ^ and parentheses. Exponents must be nonnegative
/// integer literals; implicit multiplication is rejected.
Polynomial parse_polynomial(const std::string& src, const std::vector<std::string>& vars);

/// Parses and validates a JSON system file (schema documented in README).
/// The fast variable is reordered to position 1 together with its weight and
/// initial-condition coordinates.
SystemSpec parse_system(const std::string& file_contents);

}  // namespace plsf
