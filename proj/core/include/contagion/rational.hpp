#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace contagion {

// Exact rational scalar. Every helper in this library returns canonical values.
using Rational = mpq_class;
using Amount = Rational;
using Value = Rational;

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Rational make_rational(long numerator, long denominator = 1);

// Accepts integers ("3", "-2"), fractions ("2/7") and exact decimals ("0.125", "1.5e-2").
Rational parse_rational(std::string_view text);

// Canonical "num/den" form, or just "num" when the denominator is 1.
std::string to_fraction(const Rational& x);

// Decimal rendering rounded half away from zero; a trailing "..." marks a non-terminating expansion.
std::string to_decimal(const Rational& x, int digits = 6);

// "2/7 (0.285714...)" style rendering used in human-readable reports.
std::string to_display(const Rational& x);

inline Rational positive_part(const Rational& x) { return sgn(x) > 0 ? x : Rational(0); }

Rational floor_rational(const Rational& x);

}  // namespace contagion
