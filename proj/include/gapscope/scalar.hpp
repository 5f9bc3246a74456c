#pragma once

#include <gmpxx.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace gapscope {

/// Arbitrary-precision rational, the scalar of the exact backend.
using Rational = mpq_class;

template <class S>
inline constexpr bool is_exact_backend = std::is_same_v<S, Rational>;

inline double to_double(const Rational& x) { return x.get_d(); }
inline constexpr double to_double(double x) { return x; }

inline int sign_of(const Rational& x) { return sgn(x); }
inline int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

inline bool scalar_is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool scalar_is_zero(double x) { return x == 0.0; }

// Equality used by irreducibility: exact on rationals, bit-level on floats.
inline bool same_scalar(const Rational& x, const Rational& y) { return x == y; }
inline bool same_scalar(double x, double y) {
  return std::bit_cast<std::uint64_t>(x) == std::bit_cast<std::uint64_t>(y);
}

inline void require_finite(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("scalar must be finite");
}
inline void require_finite(const Rational&) {}

/// Parses "n" or "n/d" (base 10). Throws std::invalid_argument on anything else.
Rational rational_from_string(const std::string& text);

/// Canonical "n" / "n/d" form.
inline std::string to_string(const Rational& x) { return x.get_str(); }

} // namespace gapscope
