#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace graphonlab {

using Rational = mpq_class;
using Integer = mpz_class;

/// num/den in lowest terms. The two-argument mpq_class constructor leaves
/// the fraction as given, and comparisons assume canonical form.
Rational make_rational(const Integer& num, const Integer& den);

/// Parses "p/q", an integer, or a decimal with at most 18 fractional digits.
/// The result is exact and canonicalized.
Rational parse_rational(std::string_view text);

/// Always "p/q", including "0/1" and "1/1".
std::string to_string(const Rational& value);

/// Display-only decimal rendering, rounded half away from zero.
std::string to_decimal(const Rational& value, int digits = 10);

/// "p/q (≈ 0.1234567890)"
std::string to_display(const Rational& value, int digits = 10);

/// 2^exponent, exponent may be negative.
Rational pow2(long exponent);

Rational abs(const Rational& value);

inline Rational binomial2(std::uint64_t n) {
  return Rational(Integer(n) * Integer(n == 0 ? 0 : n - 1) / 2);
}

Integer lcm(const Integer& a, const Integer& b);
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);

/// Smallest L with 2^L >= value (value > 0).
long ceil_log2(const Rational& value);

double to_double(const Rational& value);

}  // namespace graphonlab
