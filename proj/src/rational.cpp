#include "moran/rational.hpp"

#include <algorithm>
#include <cctype>

#include "moran/error.hpp"

namespace moran {

Rational make_rational(long num, long den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational pow_int(const Rational& base, long exp) {
  if (exp == 0) return Rational(1);
  if (base == 0) {
    if (exp < 0) throw DomainError("zero raised to a negative power");
    return Rational(0);
  }
  const unsigned long e = static_cast<unsigned long>(exp < 0 ? -exp : exp);
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  Rational r = exp > 0 ? Rational(num, den) : Rational(den, num);
  r.canonicalize();
  return r;
}

Rational inv_pow(long base, unsigned long exp) {
  if (base == 0) throw DomainError("inv_pow of zero");
  Integer p;
  mpz_pow_ui(p.get_mpz_t(), Integer(base).get_mpz_t(), exp);
  Rational r(Integer(1), p);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  std::string t;
  std::remove_copy_if(text.begin(), text.end(), std::back_inserter(t),
                      [](unsigned char c) { return std::isspace(c); });
  if (t.empty()) throw ParseError("empty rational");
  try {
    const auto dot = t.find('.');
    if (dot == std::string::npos) {
      Rational r(t, 10);
      if (r.get_den() == 0) throw ParseError("zero denominator: " + text);
      r.canonicalize();
      return r;
    }
    if (t.find('/') != std::string::npos) throw ParseError("bad rational: " + text);
    bool neg = t[0] == '-';
    std::string whole = t.substr(neg || t[0] == '+' ? 1 : 0, dot - (neg || t[0] == '+' ? 1 : 0));
    std::string frac = t.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (frac.empty()) frac = "0";
    for (char c : whole + frac)
      if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("bad rational: " + text);
    Integer num(whole + frac, 10);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    Rational r(num, den);
    r.canonicalize();
    return neg ? Rational(-r) : r;
  } catch (const std::invalid_argument&) {
    throw ParseError("bad rational: " + text);
  }
}

double to_double(const Rational& x) { return x.get_d(); }

Integer floor(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Integer ceil(const Rational& x) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

IntervalR hull(const IntervalR& a, const IntervalR& b) {
  return {a.lo < b.lo ? a.lo : b.lo, a.hi > b.hi ? a.hi : b.hi};
}

Rational hausdorff_distance(const IntervalR& a, const IntervalR& b) {
  Rational d1 = abs(a.lo - b.lo);
  Rational d2 = abs(a.hi - b.hi);
  return d1 > d2 ? d1 : d2;
}

}  // namespace moran
