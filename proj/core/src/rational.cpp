#include "graphonlab/rational.hpp"

#include <cctype>
#include <cmath>

#include "graphonlab/error.hpp"

namespace graphonlab {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational result;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw Error(ErrorCode::ParseError, "bad rational '" + std::string(text) + "'");
    }
    Integer d{std::string(den)};
    if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    result = Rational(Integer(std::string(num)), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty())) {
      throw Error(ErrorCode::ParseError, "bad decimal '" + std::string(text) + "'");
    }
    if (frac.size() > 18) {
      throw Error(ErrorCode::ParseError, "more than 18 fractional digits in '" + std::string(text) + "'");
    }
    Integer scale(1);
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Integer w = whole.empty() ? Integer(0) : Integer(std::string(whole));
    Integer f = frac.empty() ? Integer(0) : Integer(std::string(frac));
    result = Rational(w * scale + f, scale);
  } else {
    if (!all_digits(s)) throw Error(ErrorCode::ParseError, "bad number '" + std::string(text) + "'");
    result = Rational(Integer(std::string(s)));
  }
  result.canonicalize();
  if (negative) result = -result;
  return result;
}

std::string to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

std::string to_decimal(const Rational& value, int digits) {
  Integer scale(1);
  for (int i = 0; i < digits; ++i) scale *= 10;
  Rational scaled = abs(value) * scale;
  // round half away from zero
  Integer q = (scaled.get_num() * 2 + scaled.get_den()) / (scaled.get_den() * 2);
  std::string s = q.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) {
      s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    }
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  if (value < 0 && q != 0) s.insert(0, "-");
  return s;
}

std::string to_display(const Rational& value, int digits) {
  return to_string(value) + " (≈ " + to_decimal(value, digits) + ")";
}

Rational pow2(long exponent) {
  Integer p;
  if (exponent >= 0) {
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(exponent));
    return Rational(p);
  }
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(-exponent));
  return Rational(Integer(1), p);
}

Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = a, y = b;
  while (y != 0) {
    std::uint64_t t = x % y;
    x = y;
    y = t;
  }
  return a / x * b;
}

long ceil_log2(const Rational& value) {
  if (value <= 0) throw Error(ErrorCode::InvalidArgument, "ceil_log2 of non-positive value");
  long e = 0;
  while (pow2(e) < value) ++e;
  while (e > -100000 && pow2(e - 1) >= value) --e;
  return e;
}

double to_double(const Rational& value) { return value.get_d(); }

}  // namespace graphonlab
