#pragma once

#include <cstdint>

#include <gmpxx.h>

namespace sandlab {

using Vertex = std::int32_t;
using EdgeId = std::int32_t;

/// Chip counts and firing counts. Arithmetic on these is overflow-checked.
using Count = std::int64_t;

/// Arbitrary-precision integer.
using Integer = mpz_class;

/// Arbitrary-precision rational. GMP keeps results of arithmetic in lowest
/// terms with a positive denominator; build from parts with make_rational.
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace sandlab
