#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "hmp/exact_core.hpp"
#include "hmp/moment_ops.hpp"

namespace hmp {

/// Principal branch W_0 on [-1/e, inf) by Halley iteration.
double lambert_w(double z);

struct StabilityBound {
  double N_star = 0;      // (4/7) W(arg)
  double W_arg = 0;       // 7 E / (8 sqrt(C_hat) delta)
  double W = 0;
  double bound = 0;       // 7 E / (sqrt(32) W): sqrt of twice the balanced term
  double bound_log = 0;   // 7 E / (sqrt(8) ln(arg)), the weaker closed form
  double term_bias = 0;   // E^2 / (4 N^2)
  double term_noise = 0;  // C_hat exp(3.5 N) delta^2
  bool asymptotic = false;  // arg > e
};

/// Balances E^2/(4N^2) against C_hat e^{3.5N} delta^2.
StabilityBound stability_bound(double delta, double E, double C_hat);

enum class NoiseMode { GaussianNormalized };

struct NoiseModel {
  double delta = 0;
  std::uint64_t seed = 42;
  NoiseMode mode = NoiseMode::GaussianNormalized;
};

/// Independent stream for (seed, n, realization).
std::mt19937_64 noise_stream(std::uint64_t seed, std::uint64_t n, std::uint64_t realization);

/// y + delta e/||e|| with e standard normal, drawing from `gen`.
template <typename Scalar>
MomentSequence<Scalar> noisy_data(const MomentSequence<Scalar>& y, double delta, std::mt19937_64& gen) {
  if (delta == 0) return y;
  if (!(delta > 0)) throw std::invalid_argument("noisy_data: negative noise level");
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec<Scalar> e(y.n());
  for (Index j = 0; j < y.n(); ++j) e(j) = Scalar(normal(gen));
  const Scalar nrm = e.norm();
  if (!(nrm > 0)) throw std::runtime_error("noisy_data: degenerate draw");
  return MomentSequence<Scalar>(y.values + (Scalar(delta) / nrm) * e);
}

template <typename Scalar>
MomentSequence<Scalar> noisy_data(const MomentSequence<Scalar>& y, const NoiseModel& model) {
  std::mt19937_64 gen = noise_stream(model.seed, 0, 0);
  return noisy_data(y, model.delta, gen);
}

struct AmplificationEstimate {
  Index n = 0;
  double f_n = 0;                 // mean over realizations of the through-origin slope
  double rate = 0;                // ln(f_n)/n
  int realizations = 0;
  std::vector<double> delta_grid;
  std::vector<double> slopes;     // per realization
  double r_squared = 0;           // mean uncentred R^2 of the per-realization fits
  double exact_norm = 0;          // ||A_n^+||
  double projection_error = 0;    // ||(A_n^+ A - I) x||
  std::vector<double> mean_noise_error;  // mean ||x_n^delta - x_n^+|| per delta
  std::vector<double> mean_total_error;  // mean ||x_n^delta - x|| per delta
  std::vector<double> max_total_error;   // worst realization per delta
  bool degenerate = false;        // some fit had all errors at roundoff level
};

/// Noise-amplification regression for the truncated pseudoinverse of size n.
AmplificationEstimate amplification_experiment(const TestFunction<double>& f, Index n, const std::vector<double>& deltas,
                                               int R, std::uint64_t seed);

struct GrowthRow {
  Index i = 0;
  double norm = 0;          // ||L_i^{-1}||_2 from lambda_max(L^{-1} L^{-T})
  double hinv_norm = 0;     // ||H_i^{-1}||_2 from the exact inverse
  double relative_gap = 0;  // | norm^2 - hinv_norm | / hinv_norm at working precision
  double row_max = 0;       // max_j |(L^{-1})_{ij}|
  Index row_max_col = 0;    // 1-based column of the row maximum
  double diag = 0;          // |(L^{-1})_{ii}|
  double bound = 0;         // exp(1.763 i)
};

/// Per-size norms, row maxima and diagonal of the inverse factor for i <= n_max.
std::vector<GrowthRow> linv_growth_study(Index n_max, const PowerIterationOptions& opts = {});

/// (1/N) sum_{j<=N} j y_j.
template <typename Scalar>
Scalar point_value_estimator(const MomentSequence<Scalar>& y, Index N) {
  if (N < 1 || N > y.n()) throw std::out_of_range("point_value_estimator: N outside 1..n");
  Scalar s(0);
  for (Index j = 1; j <= N; ++j) s += Scalar(j) * y.values(j - 1);
  return s / Scalar(N);
}

struct PointValueRow {
  double delta = 0;
  Index best_N = 0;
  double min_error = 0;
};

/// For each delta, minimises over N <= N_max the estimator error under the
/// worst admissible perturbation e_j ~ sign(bias) j with ||e|| = delta.
std::vector<PointValueRow> point_value_noise_study(const MomentSequence<double>& y, double x1,
                                                   const std::vector<double>& deltas, Index N_max);

/// Slope of the least-squares line through (ln x, ln y).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Derivatives of the bump b(s) = exp(-1/s - 1/(1-s)) on (0,1).
class MotherBump {
 public:
  explicit MotherBump(int max_order);
  /// b^{(order)}(s); zero outside (0,1) and where b underflows.
  double derivative(int order, double s) const;
  int max_order() const { return static_cast<int>(poly_.size()) - 1; }

 private:
  struct Term {
    int a;  // power of u = 1/s
    int b;  // power of v = 1/(1-s)
    double c;
  };
  std::vector<std::vector<Term>> poly_;  // b^{(n)} = P_n(u, v) b
};

struct CounterexampleStep {
  int q = 0;
  double r = 0;
  double ln_l2 = 0;       // ln ||x_r||
  double ln_moment = 0;   // ln ||A x_r||
  double ratio = 0;       // ||x_r|| / ||A x_r||^mu
  double growth = 0;      // ratio(q) / ratio(q-1)
  double growth_sq = 0;   // growth^2, the squared-norm ratio growth
};

struct CounterexampleResult {
  double mu = 0, p = 0;
  int k = 0, m = 0;
  double target = 0;
  bool met = false;
  double r = 0, ratio = 0;
  std::vector<CounterexampleStep> steps;
  double g_l2_norm = 0;           // ||g||_{L2} after H^k normalisation
  double g_hk_norm = 0;           // equals 1 up to quadrature
  double max_vanishing_moment = 0;  // max_{j<=m} |int g s^{j-1}|, should be ~0
  std::vector<double> moments;    // gamma_j = int_0^1 g(s) s^{j-1} ds, j = 1..J
  double tail_bound = 0;          // bound on the moment tail beyond J at the final r
};

struct CounterexampleOptions {
  int q_max = 200;
  int J = 80;
};

/// Scaled bumps x_r(t) = r^p g(t/r) with g the m-th derivative of the mother
/// bump, p = k - 1/2 and the smallest m with m > (2p+1)(1-mu)/mu - 1/2.
/// Halves r until ||x_r|| / ||A x_r||^mu exceeds C.
CounterexampleResult holder_counterexample(double mu, int k, double C, const CounterexampleOptions& opts = {});

/// Smallest admissible vanishing-moment count for (mu, p).
int counterexample_moment_count(double mu, double p);

struct LaplaceRow {
  Index j = 0;
  double moment = 0;
  double laplace = 0;
  double difference = 0;
  double cutoff = 0;      // T in int_0^T
  double tail_bound = 0;  // sup|f| e^{-jT}/j
  bool agrees = false;    // difference <= tol + tail_bound
};

/// Moments against int_0^inf e^{-j tau} f(e^{-tau}) d tau by an independent rule.
std::vector<LaplaceRow> laplace_consistency(const TestFunction<double>& f, const std::vector<Index>& j_list, double tol);

/// ((n+1)/2) int_0^1 sigma(sqrt t) t^{n-1} dt per mode.
std::vector<double> eit_forward(const std::function<double(double)>& sigma, const std::vector<Index>& modes,
                                double tol = 1e-14);

}  // namespace hmp
