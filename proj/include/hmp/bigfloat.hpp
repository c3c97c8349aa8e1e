#pragma once

#include <mpfr.h>

#include <Eigen/Core>
#include <iosfwd>
#include <string>

#include "hmp/rational.hpp"

namespace hmp {

/// Binary floating point number with a per-value precision (MPFR).
///
/// Default-constructed values and conversions use the thread-local default
/// precision, which `PrecisionScope` adjusts. Binary operations round to the
/// larger of the operand precisions.
class BigFloat {
 public:
  static constexpr long kMinPrecision = 64;
  static constexpr long kDefaultPrecision = 256;

  static long default_precision();
  static void set_default_precision(long bits);

  /// Sets the thread-local default precision for the lifetime of the scope.
  class PrecisionScope {
   public:
    explicit PrecisionScope(long bits) : saved_(default_precision()) { set_default_precision(bits); }
    ~PrecisionScope() { set_default_precision(saved_); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

   private:
    long saved_;
  };

  BigFloat() : BigFloat(0L) {}
  BigFloat(long v);    // NOLINT(google-explicit-constructor)
  BigFloat(int v) : BigFloat(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
  BigFloat(double v);  // NOLINT(google-explicit-constructor)
  explicit BigFloat(long double v);
  /// Correctly rounded at `bits` (default precision when bits <= 0).
  explicit BigFloat(const Rational& r, long bits = 0);

  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  long precision() const { return static_cast<long>(mpfr_get_prec(f_)); }

  BigFloat& operator+=(const BigFloat& o);
  BigFloat& operator-=(const BigFloat& o);
  BigFloat& operator*=(const BigFloat& o);
  BigFloat& operator/=(const BigFloat& o);

  friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
  friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
  friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
  friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }
  BigFloat operator-() const;
  BigFloat operator+() const { return *this; }

  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.f_, b.f_) != 0; }
  friend bool operator!=(const BigFloat& a, const BigFloat& b) { return !(a == b); }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.f_, b.f_) != 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.f_, b.f_) != 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.f_, b.f_) != 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.f_, b.f_) != 0; }

  int sign() const { return mpfr_sgn(f_); }
  bool is_finite() const { return mpfr_number_p(f_) != 0; }

  double to_double() const { return mpfr_get_d(f_, MPFR_RNDN); }
  long double to_long_double() const { return mpfr_get_ld(f_, MPFR_RNDN); }
  /// Scientific notation with `digits` significant digits.
  std::string str(int digits = 20) const;

  const mpfr_t& raw() const { return f_; }
  mpfr_t& raw() { return f_; }

 private:
  struct Uninit {};
  BigFloat(Uninit, long bits) { mpfr_init2(f_, bits); }
  friend BigFloat sqrt(const BigFloat&);
  friend BigFloat log(const BigFloat&);
  friend BigFloat exp(const BigFloat&);
  friend BigFloat abs(const BigFloat&);

  mpfr_t f_;
};

BigFloat sqrt(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat abs(const BigFloat& x);
std::ostream& operator<<(std::ostream& os, const BigFloat& x);

}  // namespace hmp

namespace Eigen {
template <>
struct NumTraits<hmp::BigFloat> : GenericNumTraits<hmp::BigFloat> {
  using Real = hmp::BigFloat;
  using NonInteger = hmp::BigFloat;
  using Literal = hmp::BigFloat;
  using Nested = hmp::BigFloat;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 20,
    MulCost = 40
  };
  static hmp::BigFloat epsilon();
  static hmp::BigFloat dummy_precision();
  static int digits10();
};
}  // namespace Eigen

namespace hmp {
using BigMatrix = Eigen::Matrix<BigFloat, Eigen::Dynamic, Eigen::Dynamic>;
using BigVector = Eigen::Matrix<BigFloat, Eigen::Dynamic, 1>;

/// Entrywise correctly rounded conversion at the current default precision.
BigMatrix to_bigfloat(const RationalMatrix& m);

/// Round a BigFloat once into a working float type.
template <typename Scalar>
Scalar from_bigfloat(const BigFloat& x);
template <>
inline double from_bigfloat<double>(const BigFloat& x) {
  return x.to_double();
}
template <>
inline long double from_bigfloat<long double>(const BigFloat& x) {
  return x.to_long_double();
}
}  // namespace hmp
