#ifndef GPAL_ERRORS_HPP
#define GPAL_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpal {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A rational literal lies outside [0,1] or is malformed.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Syntax error in formula text, with a 1-based position and the tokens that
/// would have been accepted there.
class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t line, std::size_t column,
             std::vector<std::string> expected = {})
      : Error(format(message, line, column, expected)),
        line_(line),
        column_(column),
        expected_(std::move(expected)) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  static std::string format(const std::string& message, std::size_t line,
                            std::size_t column,
                            const std::vector<std::string>& expected) {
    std::string out = std::to_string(line) + ":" + std::to_string(column) +
                      ": " + message;
    if (!expected.empty()) {
      out += " (expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i > 0) out += i + 1 == expected.size() ? " or " : ", ";
        out += expected[i];
      }
      out += ")";
    }
    return out;
  }

  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> expected_;
};

/// A rational literal in formula text lies outside [0,1].
class ConstantRangeError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Malformed model, unknown world/agent, or missing valuation.
class ModelError : public Error {
 public:
  using Error::Error;
};

/// Malformed proof file or schema.
class ProofFormatError : public Error {
 public:
  using Error::Error;
};

/// Exhaustive enumeration would exceed the configured model budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::string count, std::string budget)
      : Error("model space of " + count + " models exceeds budget of " +
              budget),
        count_(std::move(count)) {}
  const std::string& count() const { return count_; }

 private:
  std::string count_;
};

}  // namespace gpal

#endif  // GPAL_ERRORS_HPP
