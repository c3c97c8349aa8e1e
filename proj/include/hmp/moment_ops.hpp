#pragma once

#include <Eigen/Core>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "hmp/bigfloat.hpp"
#include "hmp/exact_core.hpp"
#include "hmp/legendre.hpp"
#include "hmp/rational.hpp"
#include "hmp/test_function.hpp"

namespace hmp {

/// y_1..y_n, the moment of order j-1 stored at index j-1. Entries beyond n are zero.
template <typename Scalar>
struct MomentSequence {
  Vec<Scalar> values;

  MomentSequence() = default;
  explicit MomentSequence(Vec<Scalar> v) : values(std::move(v)) {}
  Index n() const { return values.size(); }
};

enum class NormKind { L2, H1, H1Seminorm, W1Inf, H2 };

struct SobolevBudget {
  double E = 1.0;
  NormKind kind = NormKind::H1;
};

class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Composite Gauss rule adapted to the smoothness hints of `f`. Every
/// refinement doubles the uniform panel count and deepens endpoint grading.
template <typename Scalar>
QuadratureRule<Scalar> adapted_rule(const TestFunction<Scalar>& f, int per_panel, int refinement) {
  const int uniform = 4 << refinement;
  const bool graded = f.singular_left || f.singular_right;
  const int levels = graded ? 40 + 12 * refinement : 0;
  return composite_rule(graded_breakpoints(f.breakpoints, uniform, f.singular_left, f.singular_right, levels),
                        per_panel);
}

/// y_j = int_0^1 t^(j-1) f(t) dt for j <= n, each within `tol` (absolute), by
/// successive refinement until two consecutive rules agree.
template <typename Scalar>
MomentSequence<Scalar> forward_moments(const TestFunction<Scalar>& f, Index n, Scalar tol = Scalar(1e-13),
                                       int max_refinements = 6) {
  if (n < 1) throw std::invalid_argument("forward_moments: n must be positive");
  const int per_panel = f.polynomial_degree >= 0 ? static_cast<int>((f.polynomial_degree + n) / 2 + 2)
                                                 : std::max(24, static_cast<int>(n / 2 + 12));
  auto moments_with = [&](const QuadratureRule<Scalar>& rule) {
    Vec<Scalar> y = Vec<Scalar>::Zero(n);
    Vec<Scalar> comp = Vec<Scalar>::Zero(n);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Scalar t = rule.nodes[q];
      Scalar term = rule.weights[q] * f.value(t);
      for (Index j = 0; j < n; ++j) {
        const Scalar s = y(j) + term;
        comp(j) += (std::abs(y(j)) >= std::abs(term)) ? (y(j) - s) + term : (term - s) + y(j);
        y(j) = s;
        term *= t;
      }
    }
    return Vec<Scalar>(y + comp);
  };
  Vec<Scalar> prev = moments_with(adapted_rule(f, per_panel, 0));
  for (int r = 1; r <= max_refinements; ++r) {
    Vec<Scalar> next = moments_with(adapted_rule(f, per_panel, r));
    std::vector<Index> bad;
    for (Index j = 0; j < n; ++j)
      if (!(std::abs(next(j) - prev(j)) <= tol)) bad.push_back(j + 1);
    if (bad.empty()) return MomentSequence<Scalar>(next);
    if (r == max_refinements) {
      std::string list;
      for (Index j : bad) list += (list.empty() ? "" : ",") + std::to_string(j);
      throw QuadratureError("forward_moments: no convergence for " + f.label + " at components " + list);
    }
    prev = std::move(next);
  }
  return MomentSequence<Scalar>(prev);
}

/// First n entries of L * lambda with the exact factored L, rounded once.
template <typename Scalar>
MomentSequence<Scalar> forward_from_expansion(const LegendreExpansion<Scalar>& e, Index n) {
  if (n < 1) throw std::invalid_argument("forward_from_expansion: n must be positive");
  const FactoredTriangular L = cholesky_factor_L(n);
  const Index m = std::min<Index>(n, e.size());
  std::vector<BigFloat> scaled;  // sqrt(w_j) lambda_j
  for (Index j = 0; j < m; ++j)
    scaled.push_back(sqrt(BigFloat(static_cast<long>(L.diag_weights[static_cast<std::size_t>(j)]))) *
                     BigFloat(to_rational(e.coefficients(j))));
  Vec<Scalar> y(n);
  for (Index i = 0; i < n; ++i) {
    BigFloat s(0L);
    for (Index j = 0; j <= std::min(i, m - 1); ++j) s += BigFloat(L.rational_part(i, j)) * scaled[static_cast<std::size_t>(j)];
    y(i) = from_bigfloat<Scalar>(s);
  }
  return MomentSequence<Scalar>(y);
}

/// [A* y](t) = sum_j y_j t^(j-1) by Horner.
template <typename Scalar>
Scalar adjoint_apply(const MomentSequence<Scalar>& y, Scalar t) {
  if (!(t >= 0 && t <= 1)) throw std::domain_error("adjoint_apply: t outside [0,1]");
  Scalar s(0);
  for (Index j = y.n() - 1; j >= 0; --j) s = s * t + y.values(j);
  return s;
}

/// Minimum-norm solution of A_n x = P_n y: lambda = L_n^{-1} y through the
/// exact inverse factor. The data are taken as exact rationals; the only
/// rounding is the final conversion of each coefficient.
template <typename Scalar>
LegendreExpansion<Scalar> pseudoinverse(const MomentSequence<Scalar>& y, const FactoredTriangular& linv) {
  const Index n = y.n();
  if (n < 1) throw std::invalid_argument("pseudoinverse: empty data");
  if (linv.size() != n || linv.side != WeightSide::ScaleRows)
    throw std::invalid_argument("pseudoinverse: inverse factor does not match the data length");
  std::vector<Rational> yq;
  yq.reserve(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) yq.push_back(to_rational(y.values(j)));
  Vec<Scalar> lambda(n);
  for (Index i = 0; i < n; ++i) {
    Rational s(0L);
    for (Index j = 0; j <= i; ++j) s += linv.rational_part(i, j) * yq[static_cast<std::size_t>(j)];
    BigFloat v(s);
    v *= sqrt(BigFloat(static_cast<long>(linv.diag_weights[static_cast<std::size_t>(i)])));
    lambda(i) = from_bigfloat<Scalar>(v);
  }
  return LegendreExpansion<Scalar>(lambda);
}

template <typename Scalar>
LegendreExpansion<Scalar> pseudoinverse(const MomentSequence<Scalar>& y) {
  return pseudoinverse(y, inverse_factor_Linv(y.n()));
}

template <typename Scalar>
struct ProjectionError {
  Scalar error{};             // ||f - Pi_n f||_{L2} by direct quadrature of the residual
  Scalar tail_sum{};          // sqrt(sum_{n <= i < i_max} lambda_i^2)
  Scalar last_coefficient{};  // |lambda_{i_max - 1}|, the tail proxy
  int i_max = 0;
  bool slow_tail = false;     // last coefficient above the tolerance
};

/// Distance from f to span{L_0..L_{n-1}}, i.e. ||(A_n^+ A - I) f||.
template <typename Scalar>
ProjectionError<Scalar> projection_error(const TestFunction<Scalar>& f, int n, Scalar tail_tol = Scalar(1e-8)) {
  if (n < 1) throw std::invalid_argument("projection_error: n must be positive");
  ProjectionError<Scalar> out;
  out.i_max = std::max(4 * n, 64);
  const QuadratureRule<Scalar> rule = adapted_rule(f, out.i_max + 8, 2);
  const LegendreExpansion<Scalar> full = project<Scalar>(f.value, out.i_max, rule);
  const LegendreExpansion<Scalar> head(full.coefficients.head(n));
  out.error = std::sqrt(rule.integrate([&](Scalar t) {
    const Scalar d = f.value(t) - expansion_eval(head, t);
    return d * d;
  }));
  out.tail_sum = full.coefficients.segment(n, out.i_max - n).norm();
  out.last_coefficient = std::abs(full.coefficients(out.i_max - 1));
  out.slow_tail = out.last_coefficient > tail_tol;
  return out;
}

inline constexpr int kSupNormGrid = 20001;

/// Norms of f on [0,1]; W1Inf samples |f'| on a uniform grid of kSupNormGrid points.
template <typename Scalar>
Scalar sobolev_norm(const TestFunction<Scalar>& f, NormKind kind) {
  const bool needs_d1 = kind != NormKind::L2;
  if (needs_d1 && !f.has_derivative()) throw std::invalid_argument("sobolev_norm: " + f.label + " has no derivative");
  if (kind == NormKind::H2 && !f.has_second_derivative())
    throw std::invalid_argument("sobolev_norm: " + f.label + " has no second derivative");
  if (kind == NormKind::W1Inf) {
    Scalar m(0);
    for (int i = 0; i < kSupNormGrid; ++i) {
      const Scalar t = Scalar(i) / Scalar(kSupNormGrid - 1);
      m = std::max(m, std::abs(f.derivative(t)));
    }
    return m;
  }
  const QuadratureRule<Scalar> rule = adapted_rule(f, 40, 3);
  return std::sqrt(rule.integrate([&](Scalar t) {
    Scalar s(0);
    if (kind != NormKind::H1Seminorm) s += f.value(t) * f.value(t);
    if (kind != NormKind::L2) s += f.derivative(t) * f.derivative(t);
    if (kind == NormKind::H2) s += f.second_derivative(t) * f.second_derivative(t);
    return s;
  }));
}

template <typename Scalar>
struct RateRow {
  int n = 0;
  Scalar error{};
  Scalar bound{};
  bool holds = false;
};

/// Checks ||(A_n^+ A - I) f|| <= E/(2n) (H1 kinds) or E/(2 sqrt(2) n^2) (H2).
template <typename Scalar>
std::vector<RateRow<Scalar>> h1_rate_check(const TestFunction<Scalar>& f, const SobolevBudget& budget,
                                           const std::vector<int>& n_list) {
  if (!(budget.E > 0)) throw std::invalid_argument("h1_rate_check: budget must be positive");
  if (budget.kind != NormKind::H1 && budget.kind != NormKind::H1Seminorm && budget.kind != NormKind::H2)
    throw std::invalid_argument("h1_rate_check: budget kind has no rate bound");
  const Scalar measured = sobolev_norm(f, budget.kind);
  // allow the quadrature rounding of the measured norm itself
  if (measured > Scalar(budget.E) * (1 + 64 * std::numeric_limits<Scalar>::epsilon()))
    throw BudgetError("h1_rate_check: measured norm " + std::to_string(static_cast<double>(measured)) +
                      " exceeds budget " + std::to_string(budget.E));
  std::vector<RateRow<Scalar>> rows;
  for (int n : n_list) {
    RateRow<Scalar> r;
    r.n = n;
    r.error = projection_error(f, n).error;
    const Scalar nn = Scalar(n);
    r.bound = budget.kind == NormKind::H2 ? Scalar(budget.E) / (2 * std::sqrt(Scalar(2)) * nn * nn)
                                          : Scalar(budget.E) / (2 * nn);
    r.holds = r.error <= r.bound;
    rows.push_back(r);
  }
  return rows;
}

/// ||A x_i||^2 for x_i = sqrt(i) t^i: sum_{j<=J} i/(i+j)^2 plus the tail i psi_1(i+J+1).
double monomial_moment_norm_sq(int i, int J = 1000);

/// ||A_n^+|| = sqrt(lambda_max(H_n^{-1})) at the given precision.
BigFloat pseudoinverse_norm(Index n, const PowerIterationOptions& opts = {});

struct GrowthFit {
  double intercept = 0;  // a in ln||A_n^+|| ~ a + b n
  double slope = 0;      // b
  double ln_C_hat = 0;   // smallest ln C with ||A_n^+|| <= sqrt(C) exp(1.763 n) on the fitted range
};

/// Least-squares fit of ln||A_n^+|| against n.
GrowthFit fit_pseudoinverse_growth(const std::vector<Index>& n_list, const PowerIterationOptions& opts = {});

inline constexpr double kGrowthRate = 1.763;

}  // namespace hmp
