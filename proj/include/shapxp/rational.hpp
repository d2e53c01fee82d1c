#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace shapxp {

using Integer = mpz_class;
using Rational = mpq_class;

/// "num/den", or just "num" when the denominator is 1.
std::string to_fraction_string(const Rational& q);

/// Fixed-point rendering rounded half away from zero, e.g. "-0.2917".
std::string to_decimal_string(const Rational& q, int places = 4);

/// "-7/24=-0.2917"
std::string to_dual_string(const Rational& q, int places = 4);

/// Parses "a", "a/b" (b != 0). Throws InputError.
Rational parse_rational(const std::string& text);

Integer factorial(unsigned n);

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  Rational q(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
  q.canonicalize();
  return q;
}

} // namespace shapxp
