#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace iadof {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const BigInt& num, const BigInt& den = 1) {
  return Rational(num, den);
}

/// "p/q", or just "p" when the denominator is 1.
std::string to_string(const Rational& r);

/// Decimal rendering with the given number of significant digits,
/// independent of the global locale.
std::string to_decimal(const Rational& r, int significant_digits = 12);

}  // namespace iadof
