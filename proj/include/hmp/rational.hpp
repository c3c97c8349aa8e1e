#pragma once

#include <gmp.h>

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace hmp {

/// Exact rational number backed by GMP's mpq_t.
///
/// Values are kept in canonical form (gcd(|num|, den) = 1, den > 0) after every
/// operation, so equality is structural. No operation ever rounds.
class Rational {
 public:
  Rational() { mpq_init(q_); }
  Rational(long v) : Rational() { mpq_set_si(q_, v, 1); }  // NOLINT(google-explicit-constructor)
  Rational(int v) : Rational(static_cast<long>(v)) {}      // NOLINT(google-explicit-constructor)
  Rational(long num, unsigned long den);
  /// Exact conversion; every finite double is a dyadic rational.
  explicit Rational(double v);
  /// Exact conversion of the 64-bit extended mantissa.
  explicit Rational(long double v);
  /// Parses "p/q" or an integer literal, base 10.
  explicit Rational(const std::string& text);

  Rational(const Rational& other) : Rational() { mpq_set(q_, other.q_); }
  Rational(Rational&& other) noexcept : Rational() { mpq_swap(q_, other.q_); }
  Rational& operator=(const Rational& other) {
    if (this != &other) mpq_set(q_, other.q_);
    return *this;
  }
  Rational& operator=(Rational&& other) noexcept {
    mpq_swap(q_, other.q_);
    return *this;
  }
  ~Rational() { mpq_clear(q_); }

  static Rational from_mpz(const mpz_t num);

  Rational& operator+=(const Rational& o) {
    mpq_add(q_, q_, o.q_);
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    mpq_sub(q_, q_, o.q_);
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    mpq_mul(q_, q_, o.q_);
    return *this;
  }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const {
    Rational r;
    mpq_neg(r.q_, q_);
    return r;
  }
  Rational operator+() const { return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.q_, b.q_) != 0; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) < 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) > 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) <= 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) >= 0; }

  int sign() const { return mpq_sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }

  std::string numerator() const;
  std::string denominator() const;
  std::string str() const;

  /// Correctly rounded (round-to-nearest) conversions.
  double to_double() const;
  long double to_long_double() const;

  const mpq_t& raw() const { return q_; }
  mpq_t& raw() { return q_; }

 private:
  mpq_t q_;
};

Rational abs(const Rational& r);
std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Conversion of a float scalar into the exact rational it represents.
template <typename Scalar>
Rational to_rational(Scalar v) {
  return Rational(v);
}
template <>
inline Rational to_rational<Rational>(Rational v) {
  return v;
}

/// Rounded conversion of a rational to a float scalar.
template <typename Scalar>
Scalar from_rational(const Rational& r);
template <>
inline double from_rational<double>(const Rational& r) {
  return r.to_double();
}
template <>
inline long double from_rational<long double>(const Rational& r) {
  return r.to_long_double();
}
template <>
inline Rational from_rational<Rational>(const Rational& r) {
  return r;
}

}  // namespace hmp

namespace Eigen {
template <>
struct NumTraits<hmp::Rational> : GenericNumTraits<hmp::Rational> {
  using Real = hmp::Rational;
  using NonInteger = hmp::Rational;
  using Literal = hmp::Rational;
  using Nested = hmp::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 40,
    MulCost = 80
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace hmp {
using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
}  // namespace hmp
