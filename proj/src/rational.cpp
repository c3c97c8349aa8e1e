#include "hmp/rational.hpp"

#include <mpfr.h>

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace hmp {

Rational::Rational(long num, unsigned long den) : Rational() {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  mpq_set_si(q_, num, den);
  mpq_canonicalize(q_);
}

Rational::Rational(double v) : Rational() {
  if (!std::isfinite(v)) throw std::domain_error("Rational: non-finite double");
  mpq_set_d(q_, v);
}

Rational::Rational(long double v) : Rational() {
  if (!std::isfinite(v)) throw std::domain_error("Rational: non-finite long double");
  mpfr_t f;
  mpfr_init2(f, 64);
  mpfr_set_ld(f, v, MPFR_RNDN);  // exact: 64-bit mantissa
  mpfr_get_q(q_, f);
  mpfr_clear(f);
}

Rational::Rational(const std::string& text) : Rational() {
  if (mpq_set_str(q_, text.c_str(), 10) != 0) throw std::invalid_argument("Rational: cannot parse '" + text + "'");
  if (mpz_sgn(mpq_denref(q_)) == 0) throw std::domain_error("Rational: zero denominator");
  mpq_canonicalize(q_);
}

Rational Rational::from_mpz(const mpz_t num) {
  Rational r;
  mpq_set_z(r.q_, num);
  return r;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  mpq_div(q_, q_, o.q_);
  return *this;
}

std::string Rational::numerator() const {
  char* s = mpz_get_str(nullptr, 10, mpq_numref(q_));
  std::string out(s);
  void (*freefunc)(void*, size_t);
  mp_get_memory_functions(nullptr, nullptr, &freefunc);
  freefunc(s, out.size() + 1);
  return out;
}

std::string Rational::denominator() const {
  char* s = mpz_get_str(nullptr, 10, mpq_denref(q_));
  std::string out(s);
  void (*freefunc)(void*, size_t);
  mp_get_memory_functions(nullptr, nullptr, &freefunc);
  freefunc(s, out.size() + 1);
  return out;
}

std::string Rational::str() const { return is_integer() ? numerator() : numerator() + "/" + denominator(); }

double Rational::to_double() const {
  mpfr_t f;
  mpfr_init2(f, 53);
  mpfr_set_q(f, q_, MPFR_RNDN);
  const double d = mpfr_get_d(f, MPFR_RNDN);
  mpfr_clear(f);
  return d;
}

long double Rational::to_long_double() const {
  mpfr_t f;
  mpfr_init2(f, 64);
  mpfr_set_q(f, q_, MPFR_RNDN);
  const long double d = mpfr_get_ld(f, MPFR_RNDN);
  mpfr_clear(f);
  return d;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace hmp
