#pragma once

#include <gmpxx.h>

#include <string>

namespace moran {

/// Exact arbitrary-precision fraction. GMP keeps results of arithmetic in
/// lowest terms with a positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(long num, long den);

/// base^exp for any integer exponent; base must be nonzero when exp < 0.
Rational pow_int(const Rational& base, long exp);

/// 1 / base^exp with base != 0 and exp >= 0.
Rational inv_pow(long base, unsigned long exp);

/// Always "p/q", including integers ("3/1") and zero ("0/1").
std::string to_string(const Rational& x);

/// Accepts "p/q", "p", or a finite decimal such as "-0.25".
Rational parse_rational(const std::string& text);

double to_double(const Rational& x);

Integer floor(const Rational& x);
Integer ceil(const Rational& x);

/// Closed interval [lo, hi] with exact endpoints.
struct IntervalR {
  Rational lo;
  Rational hi;

  Rational length() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains(const IntervalR& other) const {
    return lo <= other.lo && other.hi <= hi;
  }
  bool operator==(const IntervalR& other) const {
    return lo == other.lo && hi == other.hi;
  }
};

/// Smallest interval containing both.
IntervalR hull(const IntervalR& a, const IntervalR& b);

/// max(|a.lo - b.lo|, |a.hi - b.hi|), the Hausdorff distance of two intervals.
Rational hausdorff_distance(const IntervalR& a, const IntervalR& b);

}  // namespace moran
