#include "hmp/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace hmp {

namespace {
thread_local long tls_precision = BigFloat::kDefaultPrecision;

mpfr_prec_t joint(const mpfr_t a, const mpfr_t b) { return std::max(mpfr_get_prec(a), mpfr_get_prec(b)); }

// Rounds `dst` op `src` into `dst`, widening dst to the joint precision first.
template <typename Op>
void apply(mpfr_t dst, const mpfr_t src, Op op) {
  const mpfr_prec_t p = joint(dst, src);
  if (p != mpfr_get_prec(dst)) mpfr_prec_round(dst, p, MPFR_RNDN);
  op(dst, dst, src, MPFR_RNDN);
}
}  // namespace

long BigFloat::default_precision() { return tls_precision; }

void BigFloat::set_default_precision(long bits) {
  if (bits < kMinPrecision) throw std::invalid_argument("BigFloat: precision below 64 bits");
  tls_precision = bits;
}

BigFloat::BigFloat(long v) {
  mpfr_init2(f_, tls_precision);
  mpfr_set_si(f_, v, MPFR_RNDN);
}

BigFloat::BigFloat(double v) {
  mpfr_init2(f_, tls_precision);
  mpfr_set_d(f_, v, MPFR_RNDN);
}

BigFloat::BigFloat(long double v) {
  mpfr_init2(f_, tls_precision);
  mpfr_set_ld(f_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const Rational& r, long bits) {
  const long p = bits > 0 ? bits : tls_precision;
  if (p < kMinPrecision) throw std::invalid_argument("BigFloat: precision below 64 bits");
  mpfr_init2(f_, p);
  mpfr_set_q(f_, r.raw(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(f_, mpfr_get_prec(other.f_));
  mpfr_set(f_, other.f_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(f_, mpfr_get_prec(other.f_));
  mpfr_swap(f_, other.f_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(f_, mpfr_get_prec(other.f_));
    mpfr_set(f_, other.f_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(f_, other.f_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(f_); }

BigFloat& BigFloat::operator+=(const BigFloat& o) {
  apply(f_, o.f_, mpfr_add);
  return *this;
}
BigFloat& BigFloat::operator-=(const BigFloat& o) {
  apply(f_, o.f_, mpfr_sub);
  return *this;
}
BigFloat& BigFloat::operator*=(const BigFloat& o) {
  apply(f_, o.f_, mpfr_mul);
  return *this;
}
BigFloat& BigFloat::operator/=(const BigFloat& o) {
  apply(f_, o.f_, mpfr_div);
  return *this;
}

BigFloat BigFloat::operator-() const {
  BigFloat r(Uninit{}, precision());
  mpfr_neg(r.f_, f_, MPFR_RNDN);
  return r;
}

std::string BigFloat::str(int digits) const {
  char* buf = nullptr;
  const std::string fmt = "%." + std::to_string(std::max(1, digits - 1)) + "Re";
  mpfr_asprintf(&buf, fmt.c_str(), f_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

BigFloat sqrt(const BigFloat& x) {
  BigFloat r(BigFloat::Uninit{}, x.precision());
  mpfr_sqrt(r.f_, x.f_, MPFR_RNDN);
  return r;
}

BigFloat log(const BigFloat& x) {
  BigFloat r(BigFloat::Uninit{}, x.precision());
  mpfr_log(r.f_, x.f_, MPFR_RNDN);
  return r;
}

BigFloat exp(const BigFloat& x) {
  BigFloat r(BigFloat::Uninit{}, x.precision());
  mpfr_exp(r.f_, x.f_, MPFR_RNDN);
  return r;
}

BigFloat abs(const BigFloat& x) {
  BigFloat r(BigFloat::Uninit{}, x.precision());
  mpfr_abs(r.f_, x.f_, MPFR_RNDN);
  return r;
}

std::ostream& operator<<(std::ostream& os, const BigFloat& x) { return os << x.str(20); }

BigMatrix to_bigfloat(const RationalMatrix& m) {
  BigMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = BigFloat(m(i, j));
  return out;
}

}  // namespace hmp

namespace Eigen {
hmp::BigFloat NumTraits<hmp::BigFloat>::epsilon() {
  hmp::BigFloat eps(1L);
  mpfr_mul_2si(eps.raw(), eps.raw(), 1 - hmp::BigFloat::default_precision(), MPFR_RNDN);
  return eps;
}
hmp::BigFloat NumTraits<hmp::BigFloat>::dummy_precision() {
  hmp::BigFloat eps = epsilon();
  return eps * hmp::BigFloat(1000L);
}
int NumTraits<hmp::BigFloat>::digits10() {
  return static_cast<int>(std::floor(static_cast<double>(hmp::BigFloat::default_precision()) * 0.30102999566398120));
}
}  // namespace Eigen
