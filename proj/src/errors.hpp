#ifndef VFL_ERRORS_HPP
#define VFL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vfl {

// Usage-level failures (bad input, mismatched dimensions, unsupported
// requests). Mapped to exit code 2 by the C API.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public UsageError {
public:
  DimensionMismatch(std::size_t a, std::size_t b)
      : UsageError("dimension mismatch: " + std::to_string(a) + " vs " +
                   std::to_string(b)) {}
};

class DomainError : public UsageError {
public:
  using UsageError::UsageError;
};

class ParseError : public UsageError {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& expected,
             const std::string& detail)
      : UsageError("parse error at " + std::to_string(line) + ":" +
                   std::to_string(column) + ": " + detail + " (expected " +
                   expected + ")"),
        line_(line), column_(column), expected_(expected) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& expected() const { return expected_; }

private:
  std::size_t line_;
  std::size_t column_;
  std::string expected_;
};

class UnsupportedType : public UsageError {
public:
  using UsageError::UsageError;
};

class UnknownFixture : public UsageError {
public:
  explicit UnknownFixture(const std::string& name)
      : UsageError("unknown fixture: " + name) {}
};

class OutOfClass : public UsageError {
public:
  using UsageError::UsageError;
};

// Answers the library cannot give exactly over Q(i). These are outcomes, not
// bugs, but they are not mathematical negatives either.
class IrrationalSpectrum : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class CartanNotFound : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class UnrecognizedDiagram : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class Truncation : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NoExactWitness : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Violated internal invariant (exit code 3).
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

#define VFL_ASSERT(cond, msg)                                              \
  do {                                                                     \
    if (!(cond)) throw ::vfl::InternalError(std::string("assertion: ") + (msg)); \
  } while (0)

}  // namespace vfl

#endif
