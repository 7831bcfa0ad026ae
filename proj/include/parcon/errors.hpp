#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace parcon {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands come from different exponent groups / field contexts.
class ContextMismatchError : public Error {
 public:
  using Error::Error;
};

// A decision depends on terms hidden below a truncation cutoff.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

class DivisionByZeroError : public Error {
 public:
  using Error::Error;
};

// An operation that needs a leading term received a zero series.
class ZeroSeriesError : public Error {
 public:
  using Error::Error;
};

class IterationLimitError : public Error {
 public:
  using Error::Error;
};

class NotContractingError : public Error {
 public:
  using Error::Error;
};

class NotParabolicError : public Error {
 public:
  using Error::Error;
};

// Mathematically inadmissible input (log of a non-monomial-led series,
// irrational power, log in the rational-exponent field, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t offset, std::vector<std::string> expected);

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

}  // namespace parcon
