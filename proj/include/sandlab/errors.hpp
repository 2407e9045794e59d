#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sandlab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated an operation's precondition or supplied malformed data.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Text input could not be parsed.
class ParseError : public InvalidInput {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InvalidInput("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Stabilization exhausted its firing budget.
class Nonterminating : public Error {
 public:
  explicit Nonterminating(std::uint64_t step_cap)
      : Error("configuration did not stabilize within " + std::to_string(step_cap) +
              " firings"),
        step_cap_(step_cap) {}
  std::uint64_t step_cap() const noexcept { return step_cap_; }

 private:
  std::uint64_t step_cap_;
};

class SingularMatrix : public Error {
 public:
  SingularMatrix() : Error("matrix is singular") {}
};

/// A brute-force routine was asked to work on an input larger than its guard.
class SizeGuard : public Error {
 public:
  using Error::Error;
};

/// 64-bit counter overflow in a chip or odometer counter.
class CounterOverflow : public Error {
 public:
  CounterOverflow() : Error("64-bit chip counter overflow") {}
};

/// Raised when a theorem-backed invariant fails to hold; indicates a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw CounterOverflow();
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw CounterOverflow();
  return r;
}

inline void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidInput(message);
}

}  // namespace detail
}  // namespace sandlab
