#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "graphonlab/rational.hpp"

namespace graphonlab::detail {

/// Rationals rewritten over a common denominator: value[i] = numerator[i] / denominator.
struct ScaledPalette {
  Integer denominator{1};
  std::vector<Integer> numerators;
  // Set when every |numerator| and the denominator fit in 62 bits.
  bool fits_i64 = false;
  std::vector<std::int64_t> small;
  std::int64_t small_denominator = 1;

  explicit ScaledPalette(const std::vector<Rational>& values) {
    for (const auto& v : values) denominator = lcm(denominator, v.get_den());
    numerators.reserve(values.size());
    for (const auto& v : values) numerators.push_back(v.get_num() * (denominator / v.get_den()));
    const Integer limit = Integer(1) << 62;
    fits_i64 = abs_le(denominator, limit);
    for (const auto& n : numerators) fits_i64 = fits_i64 && abs_le(n, limit);
    if (fits_i64) {
      small_denominator = denominator.get_si();
      small.reserve(numerators.size());
      for (const auto& n : numerators) small.push_back(n.get_si());
    }
  }

 private:
  static bool abs_le(const Integer& a, const Integer& bound) {
    return a >= 0 ? a < bound : Integer(-a) < bound;
  }
};

inline int bit_length(const Integer& value) {
  if (value == 0) return 0;
  return static_cast<int>(mpz_sizeinbase(value.get_mpz_t(), 2));
}

inline Integer to_integer(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  Integer hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  Integer lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  Integer r = (hi << 64) + lo;
  return neg ? Integer(-r) : r;
}

inline Integer to_integer_u128(unsigned __int128 u) {
  Integer hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  Integer lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  return (hi << 64) + lo;
}

}  // namespace graphonlab::detail
