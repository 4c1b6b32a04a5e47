#ifndef BRIM_ERRORS_HPP
#define BRIM_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace brim {

/// Two objects living in different ambient rings (or index spaces).
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An ideal whose colength is infinite was used where finite length is needed.
class NotPrimary : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// (p, q) lies outside q >= (p + 1) r, where the stratified evaluator is exact.
class RegionViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Two evaluators disagreed on the same Lambda(p, q).
class EvaluatorMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Syntax or validation error in a family file.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace brim

#endif  // BRIM_ERRORS_HPP
