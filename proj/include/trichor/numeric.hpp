#pragma once

// Exact integer and rational arithmetic used for counts and charges.

#include <algorithm>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace trichor {

using BigCount = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const BigCount& num, const BigCount& den = 1) { return Rational(num, den); }

inline BigCount numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigCount denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline std::string to_string(const BigCount& v) { return v.str(); }

inline BigCount floor(const Rational& q) {
  BigCount num = numerator(q);
  BigCount den = denominator(q);
  BigCount quot = num / den;  // truncates toward zero
  if (num < 0 && quot * den != num) quot -= 1;
  return quot;
}

inline BigCount ceil(const Rational& q) { return -floor(-q); }

inline Rational pow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  Rational b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    b *= b;
    exponent >>= 1U;
  }
  return result;
}

inline BigCount pow10(unsigned digits) {
  BigCount p = 1;
  for (unsigned i = 0; i < digits; ++i) p *= 10;
  return p;
}

namespace detail {

inline std::string place_point(BigCount scaled, unsigned digits) {
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string s = scaled.str();
  if (digits > 0) {
    if (s.size() <= digits) s.insert(0, digits - s.size() + 1, '0');
    s.insert(s.size() - digits, 1, '.');
  }
  return negative ? "-" + s : s;
}

}  // namespace detail

/// Decimal rendering rounded half away from zero to `digits` places.
inline std::string to_decimal(const Rational& q, unsigned digits) {
  const Rational scaled = q * Rational(pow10(digits));
  const Rational half(1, 2);
  const BigCount rounded = q < 0 ? -floor(-scaled + half) : floor(scaled + half);
  return detail::place_point(rounded, digits);
}

/// Decimal rendering rounded toward +infinity to `digits` places.
inline std::string to_decimal_ceil(const Rational& q, unsigned digits) {
  return detail::place_point(ceil(q * Rational(pow10(digits))), digits);
}

/// Exact decimal string if the expansion terminates, trailing zeros dropped.
inline bool exact_decimal(const Rational& q, std::string& out) {
  BigCount den = denominator(q);
  unsigned twos = 0;
  unsigned fives = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++twos;
  }
  while (den % 5 == 0) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return false;
  const unsigned digits = std::max(twos, fives);
  out = detail::place_point(numerator(q) * pow10(digits) / denominator(q), digits);
  return true;
}

/// "28 17/28" style rendering; integers print bare.
inline std::string to_mixed(const Rational& q) {
  const BigCount num = numerator(q);
  const BigCount den = denominator(q);
  if (den == 1) return num.str();
  const bool negative = num < 0;
  const BigCount a = negative ? BigCount(-num) : num;
  const BigCount whole = a / den;
  const BigCount rest = a % den;
  std::string s = negative ? "-" : "";
  if (whole != 0) s += whole.str() + " ";
  return s + rest.str() + "/" + den.str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace trichor
