#pragma once

#include <stdexcept>
#include <string>

namespace dpsrk {

// Argument outside the mathematical domain of an operation (negative pump,
// zero divisor, non-positive efficiency...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A fitted model evaluated where it is not valid, or a derived probability
// left its physical range.
class ModelRangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

// No secret key can be distilled at the requested operating point.
class InsecureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoFeasiblePointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// QBER beyond the last error-correction table breakpoint.
class AboveCorrectionRangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

// Scenario-file or CSV parse failure with a 1-based source position. Line 0
// marks a whole-file problem such as a missing key.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, int line, int column, const std::string& message)
      : std::runtime_error(line > 0 ? source + ":" + std::to_string(line) + ":" +
                                          std::to_string(column) + ": " + message
                                    : source + ": " + message),
        source_(std::move(source)),
        line_(line),
        column_(column) {}

  const std::string& source() const noexcept { return source_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  std::string source_;
  int line_;
  int column_;
};

}  // namespace dpsrk
