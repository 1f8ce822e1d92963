#pragma once

#include <stdexcept>
#include <string>

namespace phasealg {

/// Malformed index usage, non-affine products, missing symmetry tags.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numeric evaluation with an unbound parameter or tensor.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The polynomial system falls outside the degree <= 2 class the solver handles.
class UnsupportedSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Diagnostic raised while reading a `.alg` document.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string code, int line, int column, const std::string& message)
      : std::runtime_error(format(code, line, column, message)),
        code_(std::move(code)),
        line_(line),
        column_(column) {}

  const std::string& code() const { return code_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string format(const std::string& code, int line, int column,
                            const std::string& message) {
    return std::to_string(line) + ":" + std::to_string(column) + ": error[" + code + "]: " +
           message;
  }

  std::string code_;
  int line_;
  int column_;
};

}  // namespace phasealg
