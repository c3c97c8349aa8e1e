#include "hmp/exact_core.hpp"

#include <gmp.h>

#include <stdexcept>
#include <string>

namespace hmp {

namespace {

void require_size(Index n) {
  if (n < 1) throw std::invalid_argument("matrix size must be at least 1");
}

// Exact integer square root of a non-negative 64-bit value; -1 if not a square.
std::int64_t exact_isqrt(std::int64_t v) {
  if (v < 0) return -1;
  mpz_t z;
  mpz_init_set_si(z, v);
  std::int64_t out = -1;
  if (mpz_perfect_square_p(z)) {
    mpz_sqrt(z, z);
    out = mpz_get_si(z);
  }
  mpz_clear(z);
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("ScaledMatrix: weight product overflows");
  return r;
}

Weights legendre_weights(Index n) {
  Weights w(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) w[static_cast<std::size_t>(j)] = 2 * j + 1;
  return w;
}

Weights unit_weights(Index n) { return Weights(static_cast<std::size_t>(n), 1); }

}  // namespace

double FactoredTriangular::entry(Index i, Index j) const {
  const auto k = static_cast<std::size_t>(side == WeightSide::ScaleColumns ? j : i);
  BigFloat v(rational_part(i, j));
  v *= sqrt(BigFloat(static_cast<long>(diag_weights[k])));
  return v.to_double();
}

BigMatrix FactoredTriangular::to_bigfloat() const {
  const Index n = size();
  BigMatrix out(n, n);
  std::vector<BigFloat> roots;
  roots.reserve(diag_weights.size());
  for (auto w : diag_weights) roots.push_back(sqrt(BigFloat(static_cast<long>(w))));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const auto k = static_cast<std::size_t>(side == WeightSide::ScaleColumns ? j : i);
      out(i, j) = rational_part(i, j).is_zero() ? BigFloat(0L) : BigFloat(rational_part(i, j)) * roots[k];
    }
  return out;
}

ScaledMatrix ScaledMatrix::plain(RationalMatrix m) {
  ScaledMatrix s;
  s.row_weights = unit_weights(m.rows());
  s.col_weights = unit_weights(m.cols());
  s.core = std::move(m);
  return s;
}

ScaledMatrix ScaledMatrix::transpose() const {
  ScaledMatrix t;
  t.core = core.transpose();
  t.row_weights = col_weights;
  t.col_weights = row_weights;
  return t;
}

Rational ScaledMatrix::diagonal(Index k) const {
  const auto ks = static_cast<std::size_t>(k);
  const std::int64_t root = exact_isqrt(checked_mul(row_weights[ks], col_weights[ks]));
  if (root < 0) throw std::domain_error("ScaledMatrix: diagonal entry is irrational");
  return core(k, k) * Rational(static_cast<long>(root));
}

bool ScaledMatrix::equals(const RationalMatrix& m) const {
  if (m.rows() != core.rows() || m.cols() != core.cols()) return false;
  for (Index i = 0; i < core.rows(); ++i)
    for (Index j = 0; j < core.cols(); ++j) {
      const Rational& c = core(i, j);
      if (c.is_zero() || m(i, j).is_zero()) {
        if (c.is_zero() != m(i, j).is_zero()) return false;
        continue;
      }
      const std::int64_t root = exact_isqrt(
          checked_mul(row_weights[static_cast<std::size_t>(i)], col_weights[static_cast<std::size_t>(j)]));
      if (root < 0 || c * Rational(static_cast<long>(root)) != m(i, j)) return false;
    }
  return true;
}

bool ScaledMatrix::is_identity() const {
  if (core.rows() != core.cols()) return false;
  return equals(RationalMatrix::Identity(core.rows(), core.cols()));
}

ScaledMatrix to_scaled(const FactoredTriangular& f) {
  ScaledMatrix s;
  s.core = f.rational_part;
  if (f.side == WeightSide::ScaleColumns) {
    s.row_weights = unit_weights(f.size());
    s.col_weights = f.diag_weights;
  } else {
    s.row_weights = f.diag_weights;
    s.col_weights = unit_weights(f.size());
  }
  return s;
}

ScaledMatrix operator*(const ScaledMatrix& a, const ScaledMatrix& b) {
  if (a.core.cols() != b.core.rows()) throw std::invalid_argument("ScaledMatrix: dimension mismatch");
  RationalMatrix left = a.core;
  for (Index k = 0; k < a.core.cols(); ++k) {
    const auto ks = static_cast<std::size_t>(k);
    const std::int64_t root = exact_isqrt(checked_mul(a.col_weights[ks], b.row_weights[ks]));
    if (root < 0) throw std::domain_error("ScaledMatrix: inner weights do not pair to a perfect square");
    if (root != 1) left.col(k) *= Rational(static_cast<long>(root));
  }
  ScaledMatrix out;
  out.core = left * b.core;
  out.row_weights = a.row_weights;
  out.col_weights = b.col_weights;
  return out;
}

RationalMatrix hilbert_matrix(Index n) {
  require_size(n);
  RationalMatrix h(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) h(i, j) = Rational(1, static_cast<unsigned long>(i + j + 1));
  return h;
}

// 0-based a = i-1, b = j-1: r_ab = C(a,b) / ((a+b+1) C(a+b,b)).
FactoredTriangular cholesky_factor_L(Index n) {
  require_size(n);
  FactoredTriangular f;
  f.rational_part = RationalMatrix::Zero(n, n);
  f.diag_weights = legendre_weights(n);
  f.side = WeightSide::ScaleColumns;
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b <= a; ++b)
      f.rational_part(a, b) = binomial(static_cast<long>(a), static_cast<unsigned long>(b)) /
                              (Rational(static_cast<long>(a + b + 1)) *
                               binomial(static_cast<long>(a + b), static_cast<unsigned long>(b)));
  return f;
}

// M_ab = (-1)^(a+b) C(a,b) C(a+b,b).
FactoredTriangular inverse_factor_Linv(Index n) {
  require_size(n);
  FactoredTriangular f;
  f.rational_part = RationalMatrix::Zero(n, n);
  f.diag_weights = legendre_weights(n);
  f.side = WeightSide::ScaleRows;
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b <= a; ++b) {
      Rational v = binomial(static_cast<long>(a), static_cast<unsigned long>(b)) *
                   binomial(static_cast<long>(a + b), static_cast<unsigned long>(b));
      f.rational_part(a, b) = ((a + b) % 2 == 0) ? v : -v;
    }
  return f;
}

RationalMatrix inverse_hilbert(Index n) {
  const FactoredTriangular linv = inverse_factor_Linv(n);
  RationalMatrix wm = linv.rational_part;
  for (Index i = 0; i < n; ++i) wm.row(i) *= Rational(static_cast<long>(linv.diag_weights[static_cast<std::size_t>(i)]));
  return linv.rational_part.transpose() * wm;
}

Rational binomial(long n, unsigned long k) {
  if (n < 0) return binomial(Rational(n), k);
  mpz_t z;
  mpz_init(z);
  mpz_bin_uiui(z, static_cast<unsigned long>(n), k);
  Rational r = Rational::from_mpz(z);
  mpz_clear(z);
  return r;
}

Rational binomial(const Rational& a, unsigned long k) {
  Rational r(1L);
  for (unsigned long j = 0; j < k; ++j) {
    r *= a - Rational(static_cast<long>(j));
    r /= Rational(static_cast<long>(j + 1));
  }
  return r;
}

BigFloat binomial(const BigFloat& a, unsigned long k) {
  BigFloat r(1L);
  for (unsigned long j = 0; j < k; ++j) {
    r *= a - BigFloat(static_cast<long>(j));
    r /= BigFloat(static_cast<long>(j + 1));
  }
  return r;
}

double binomial(double a, unsigned long k) {
  double r = 1.0;
  for (unsigned long j = 0; j < k; ++j) r *= (a - static_cast<double>(j)) / static_cast<double>(j + 1);
  return r;
}

SpectralEstimate spectral_norm(const BigMatrix& m, const PowerIterationOptions& opts) {
  if (m.rows() != m.cols() || m.rows() == 0) throw std::invalid_argument("spectral_norm: need a non-empty square matrix");
  if (!(opts.tol > 0)) throw std::invalid_argument("spectral_norm: tol must be positive");
  BigFloat::PrecisionScope scope(opts.precision_bits);
  const Index n = m.rows();
  const BigFloat tol(opts.tol);

  BigVector v = BigVector::Constant(n, BigFloat(1L) / sqrt(BigFloat(static_cast<long>(n))));
  SpectralEstimate est;
  for (int it = 1; it <= opts.max_iterations; ++it) {
    const BigVector w = m * v;
    const BigFloat rho = v.dot(w);
    const BigFloat wnorm = sqrt(w.squaredNorm());
    est.iterations = it;
    if (wnorm.sign() == 0) {
      est.value = BigFloat(0L);
      est.residual = BigFloat(0L);
      return est;
    }
    const BigVector r = w - rho * v;
    est.value = rho;
    est.residual = sqrt(r.squaredNorm()) / abs(rho);
    if (est.residual <= tol) return est;
    v = w / wnorm;
  }
  throw ConvergenceError("spectral_norm: no convergence after " + std::to_string(opts.max_iterations) + " iterations",
                         est);
}

SpectralEstimate spectral_norm(const RationalMatrix& m, const PowerIterationOptions& opts) {
  BigFloat::PrecisionScope scope(opts.precision_bits);
  return spectral_norm(to_bigfloat(m), opts);
}

}  // namespace hmp
