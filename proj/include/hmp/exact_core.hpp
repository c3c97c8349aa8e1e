#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hmp/bigfloat.hpp"
#include "hmp/rational.hpp"

namespace hmp {

using Index = Eigen::Index;
using Weights = std::vector<std::int64_t>;

/// Which side of the rational part the diagonal sqrt-weights act on.
enum class WeightSide {
  ScaleColumns,  // value = rational_part * diag(sqrt(w))
  ScaleRows      // value = diag(sqrt(w)) * rational_part
};

/// Lower-triangular matrix whose irrational factors sqrt(2k-1) are kept symbolic.
///
/// The Legendre factor of the Hilbert matrix is stored as L~ * S and its inverse
/// as S * M with S = diag(sqrt(diag_weights)), so every identity between them
/// can be verified in rational arithmetic.
struct FactoredTriangular {
  RationalMatrix rational_part;
  Weights diag_weights;
  WeightSide side = WeightSide::ScaleColumns;

  Index size() const { return rational_part.rows(); }
  /// Entry with the square root applied, correctly rounded to double.
  double entry(Index i, Index j) const;
  /// Full matrix at the current BigFloat default precision.
  BigMatrix to_bigfloat() const;
};

/// General form sqrt(row_weights) * core * sqrt(col_weights) for exact products.
///
/// A product of two scaled matrices stays rational as long as every inner pair
/// of weights multiplies to a perfect square; operator* checks this.
struct ScaledMatrix {
  RationalMatrix core;
  Weights row_weights;
  Weights col_weights;

  static ScaledMatrix plain(RationalMatrix m);
  ScaledMatrix transpose() const;
  /// Exact test that the represented matrix is the identity.
  bool is_identity() const;
  /// Exact test against a rational matrix: true when every entry of the
  /// represented matrix equals `m` (irrational entries never match non-zero ones).
  bool equals(const RationalMatrix& m) const;
  /// Represented diagonal entry, which is rational when the weights agree.
  Rational diagonal(Index k) const;
};

ScaledMatrix to_scaled(const FactoredTriangular& f);
ScaledMatrix operator*(const ScaledMatrix& a, const ScaledMatrix& b);

/// H_n with entries 1/(i+j-1), 1-based.
RationalMatrix hilbert_matrix(Index n);

/// Legendre Cholesky factor of H_n in column-scaled form, H_n = L L^T.
FactoredTriangular cholesky_factor_L(Index n);

/// Closed-form inverse of the Cholesky factor in row-scaled form.
FactoredTriangular inverse_factor_Linv(Index n);

/// H_n^{-1} = M^T diag(2j-1) M where L^{-1} = S M. Integer entries.
RationalMatrix inverse_hilbert(Index n);

/// Generalised binomial coefficient via the running product prod_j (a-j)/(j+1).
Rational binomial(const Rational& a, unsigned long k);
BigFloat binomial(const BigFloat& a, unsigned long k);
double binomial(double a, unsigned long k);
/// Integer binomial C(n, k) for n >= 0, exact.
Rational binomial(long n, unsigned long k);

struct SpectralEstimate {
  BigFloat value;     // largest eigenvalue (spectral norm of an SPD matrix)
  BigFloat residual;  // ||A v - value v|| / |value| for the unit iterate v
  int iterations = 0;
};

/// Thrown when power iteration hits its cap; carries the last iterate.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, SpectralEstimate last)
      : std::runtime_error(what), last_(std::move(last)) {}
  const SpectralEstimate& last() const { return last_; }

 private:
  SpectralEstimate last_;
};

struct PowerIterationOptions {
  long precision_bits = BigFloat::kDefaultPrecision;
  double tol = 1e-20;
  int max_iterations = 20000;
};

/// Largest eigenvalue of a symmetric positive semi-definite matrix by power
/// iteration from the all-ones vector. Stops once the Rayleigh-quotient
/// residual certifies the relative error `tol`.
SpectralEstimate spectral_norm(const RationalMatrix& m, const PowerIterationOptions& opts = {});
SpectralEstimate spectral_norm(const BigMatrix& m, const PowerIterationOptions& opts = {});

}  // namespace hmp
