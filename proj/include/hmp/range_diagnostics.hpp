#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hmp/exact_core.hpp"
#include "hmp/moment_ops.hpp"

namespace hmp {

// Forward differences mu_{m,n} = sum_{l=0}^n (-1)^l C(n,l) y_{m+l+1} (1-based y),
// i.e. int t^m (1-t)^n x(t) dt when y are moments of x.

Rational forward_differences(const RationalVector& y, Index m, Index n);

/// Float mode with compensated summation; loses about n bits to cancellation.
template <typename Scalar>
Scalar forward_differences(const MomentSequence<Scalar>& y, Index m, Index n) {
  if (m < 0 || n < 0 || m + n + 1 > y.n()) throw std::out_of_range("forward_differences: index beyond truncation");
  Scalar s(0), c(0), binom(1);
  for (Index l = 0; l <= n; ++l) {
    const Scalar term = ((l % 2) ? -binom : binom) * y.values(m + l);
    const Scalar t = s + term;
    c += (std::abs(s) >= std::abs(term)) ? (s - t) + term : (term - t) + s;
    s = t;
    binom = binom * Scalar(n - l) / Scalar(l + 1);
  }
  return s + c;
}

template <typename Value>
struct HausdorffStats {
  Index N = 0;
  std::vector<Value> lambda;  // lambda_{N,m}, m = 0..N
  Value criterion_value{};    // (N+1) sum lambda^2
  Value picard_partial{};     // ||P_{N+1} L^{-1} y||^2 over the same N+1 data
};

/// Exact statistics; criterion_value = ||D_{N+1} R_{N+1} P_{N+1} y||^2.
HausdorffStats<Rational> hausdorff_criterion(const RationalVector& y, Index N);

/// Float statistics; lambda by compensated sums, Picard term through the
/// exact inverse factor.
template <typename Scalar>
HausdorffStats<Scalar> hausdorff_criterion(const MomentSequence<Scalar>& y, Index N) {
  if (N < 0 || N + 1 > y.n()) throw std::out_of_range("hausdorff_criterion: level beyond truncation");
  HausdorffStats<Scalar> st;
  st.N = N;
  Scalar binom(1), sum(0);
  for (Index m = 0; m <= N; ++m) {
    const Scalar lam = binom * forward_differences(y, m, N - m);
    st.lambda.push_back(lam);
    sum += lam * lam;
    binom = binom * Scalar(N - m) / Scalar(m + 1);
  }
  st.criterion_value = Scalar(N + 1) * sum;
  MomentSequence<Scalar> head(y.values.head(N + 1));
  st.picard_partial = pseudoinverse(head).squared_norm();
  return st;
}

/// Upper-triangular R_N with (R_N)_ij = (-1)^(i+j) C(N-i, j-i), unit diagonal.
RationalMatrix build_RN(Index N);

/// D_N = sqrt(N) diag(C(N-1, i-1)) with sqrt(N) kept as a row weight.
ScaledMatrix build_DN(Index N);

/// T_N = diag(C(N-1,k-1) / C(N-1+k, k-1)).
RationalMatrix build_TN(Index N);

struct TNCheck {
  bool exact = false;
  ScaledMatrix gram;       // V_N^T V_N in weight-factored form
  RationalMatrix residual;  // gram.core - diag(T_kk / w_k); zero iff the identity holds
};

/// Forms V_N = D_N R_N P_N L P_N exactly and compares V_N^T V_N with T_N.
TNCheck verify_TN_identity(Index N);

/// ||D_N R_N P_N y||^2 and ||T_N^{1/2} P_N L^{-1} y||^2, both exact.
struct RangeStatisticPair {
  Rational hausdorff_side;
  Rational picard_side;
};
RangeStatisticPair range_statistics(const RationalVector& y, Index N);

/// ||P_N L^{-1} y||^2 = sum_{i<=N} (2i-1) (M y)_i^2, exact.
std::vector<Rational> picard_partial_sums(const RationalVector& y, const std::vector<Index>& levels);

template <typename Scalar>
std::vector<Scalar> picard_partial_sums(const MomentSequence<Scalar>& y, const std::vector<Index>& levels) {
  Index top = 0;
  for (Index N : levels) top = std::max(top, N);
  if (top > y.n()) throw std::out_of_range("picard_partial_sums: level beyond truncation");
  std::vector<Scalar> out;
  if (top == 0) return std::vector<Scalar>(levels.size(), Scalar(0));
  const LegendreExpansion<Scalar> lam = pseudoinverse(MomentSequence<Scalar>(y.values.head(top)));
  for (Index N : levels) out.push_back(N == 0 ? Scalar(0) : lam.coefficients.head(N).squaredNorm());
  return out;
}

/// Moments of 1, t^p etc. as exact rationals: y_j = 1/(j + p).
RationalVector monomial_moments_exact(Index n, long p = 0);

struct StableFamilyMember {
  double alpha = 0;
  std::vector<double> coeffs;         // C(alpha, j-1)(-1)^(j-1), j = 1..J
  double l2_function_norm_sq = 0;     // 1/(1+2 alpha)
  double hardy_norm_sq = 0;           // sum_k C(alpha,k)^2 with envelope tail
  double hardy_norm_sq_closed = 0;    // Gamma(1+2a)/Gamma(1+a)^2
  double hardy_tail = 0;              // tail estimate added to the partial sum
  double hardy_uncertainty = 0;       // |estimate(K) - estimate(K/2)|
  double d1_sq_closed = 0;            // hardy/l2 = Gamma(1+2a)(1+2a)/Gamma(1+a)^2
  double envelope_c1 = 0;             // min_j y_j j^(1+alpha)
  double envelope_c2 = 0;             // max_j y_j j^(1+alpha)
  bool positive = false;
  bool decreasing = false;
};

/// g_alpha(t) = (1-t)^alpha = sum y_j t^(j-1). The Hardy sum runs to K terms.
StableFamilyMember stable_family(double alpha, Index J, Index K = 1 << 20);

}  // namespace hmp
