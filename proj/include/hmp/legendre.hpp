#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace hmp {

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Nodes in (0,1) with positive weights summing to one.
template <typename Scalar>
struct QuadratureRule {
  std::vector<Scalar> nodes;
  std::vector<Scalar> weights;
  int order = 0;  // exact for polynomials up to this degree

  std::size_t size() const { return nodes.size(); }

  template <typename F>
  Scalar integrate(F&& f) const {
    Scalar s(0), c(0);  // Neumaier
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const Scalar term = weights[i] * f(nodes[i]);
      const Scalar t = s + term;
      c += (std::abs(s) >= std::abs(term)) ? (s - t) + term : (term - t) + s;
      s = t;
    }
    return s + c;
  }
};

/// n-point Gauss-Legendre rule on [a,b], order 2n-1. Newton on P_n from the
/// Tricomi initial guess; converges in a handful of steps for all n.
template <typename Scalar>
QuadratureRule<Scalar> gauss_legendre(int n, Scalar a = Scalar(0), Scalar b = Scalar(1)) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  const Scalar half = (b - a) / 2, mid = (a + b) / 2;
  QuadratureRule<Scalar> rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  rule.order = 2 * n - 1;
  const int m = (n + 1) / 2;
  for (int i = 1; i <= m; ++i) {
    Scalar x = std::cos(pi * (Scalar(i) - Scalar(0.25)) / (Scalar(n) + Scalar(0.5)));
    Scalar dp(0);
    for (int it = 0; it < 100; ++it) {
      Scalar p0(1), p1 = x;
      for (int k = 2; k <= n; ++k) {
        const Scalar p2 = (Scalar(2 * k - 1) * x * p1 - Scalar(k - 1) * p0) / Scalar(k);
        p0 = p1;
        p1 = p2;
      }
      dp = Scalar(n) * (x * p1 - p0) / (x * x - Scalar(1));
      const Scalar dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 2 * eps) break;
    }
    const Scalar w = Scalar(2) / ((Scalar(1) - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i - 1), hi = static_cast<std::size_t>(n - i);
    rule.nodes[lo] = mid - half * x;
    rule.nodes[hi] = mid + half * x;
    rule.weights[lo] = rule.weights[hi] = half * w;
  }
  return rule;
}

/// Gauss rule with `per_panel` nodes on every panel [breaks[k], breaks[k+1]].
template <typename Scalar>
QuadratureRule<Scalar> composite_rule(const std::vector<Scalar>& breaks, int per_panel) {
  if (breaks.size() < 2) throw std::invalid_argument("composite_rule: need at least two breakpoints");
  QuadratureRule<Scalar> out;
  out.order = 2 * per_panel - 1;
  const QuadratureRule<Scalar> ref = gauss_legendre<Scalar>(per_panel);
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const Scalar a = breaks[k], h = breaks[k + 1] - breaks[k];
    if (!(h > 0)) throw std::invalid_argument("composite_rule: breakpoints must increase");
    for (std::size_t i = 0; i < ref.size(); ++i) {
      out.nodes.push_back(a + h * ref.nodes[i]);
      out.weights.push_back(h * ref.weights[i]);
    }
  }
  return out;
}

/// Breakpoints on [0,1]: `uniform` equal panels, every listed interior point,
/// and `levels` geometric refinements (ratio 1/2) toward each singular end.
template <typename Scalar>
std::vector<Scalar> graded_breakpoints(const std::vector<Scalar>& interior, int uniform, bool grade_left,
                                       bool grade_right, int levels) {
  std::vector<Scalar> b{Scalar(0), Scalar(1)};
  for (int k = 1; k < uniform; ++k) b.push_back(Scalar(k) / Scalar(uniform));
  for (Scalar x : interior)
    if (x > 0 && x < 1) b.push_back(x);
  const Scalar first = Scalar(1) / Scalar(std::max(uniform, 1));
  // outer Gauss nodes of a narrower panel at t = 1 round onto the endpoint
  const Scalar right_floor = 65536 * std::numeric_limits<Scalar>::epsilon();
  Scalar h = first;
  for (int k = 0; k < levels; ++k) {
    h /= 2;
    if (grade_left) b.push_back(h);
    if (grade_right && h >= right_floor) b.push_back(Scalar(1) - h);
  }
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end(), [](Scalar x, Scalar y) { return !(y - x > 0); }), b.end());
  return b;
}

/// L_k(t) = sqrt(2k+1) P_k(2t-1).
template <typename Scalar>
Scalar legendre_eval(int k, Scalar t) {
  if (!(t >= 0 && t <= 1)) throw std::domain_error("legendre_eval: t outside [0,1]");
  if (k < 0) throw std::invalid_argument("legendre_eval: negative degree");
  const Scalar x = 2 * t - 1;
  Scalar p0(1), p1 = x;
  if (k == 0) return p0;
  for (int j = 2; j <= k; ++j) {
    const Scalar p2 = (Scalar(2 * j - 1) * x * p1 - Scalar(j - 1) * p0) / Scalar(j);
    p0 = p1;
    p1 = p2;
  }
  return std::sqrt(Scalar(2 * k + 1)) * p1;
}

/// All of L_0(t) .. L_{m-1}(t).
template <typename Scalar>
Vec<Scalar> legendre_all(int m, Scalar t) {
  Vec<Scalar> out(m);
  const Scalar x = 2 * t - 1;
  Scalar p0(1), p1 = x;
  for (int k = 0; k < m; ++k) {
    Scalar pk;
    if (k == 0) {
      pk = p0;
    } else if (k == 1) {
      pk = p1;
    } else {
      pk = (Scalar(2 * k - 1) * x * p1 - Scalar(k - 1) * p0) / Scalar(k);
      p0 = p1;
      p1 = pk;
    }
    out(k) = std::sqrt(Scalar(2 * k + 1)) * pk;
  }
  return out;
}

/// Coefficients in the orthonormal basis L_0, L_1, ...; entry i is the
/// coefficient of L_i (index shift relative to the 1-based operator rows).
template <typename Scalar>
struct LegendreExpansion {
  Vec<Scalar> coefficients;

  LegendreExpansion() = default;
  explicit LegendreExpansion(Vec<Scalar> c) : coefficients(std::move(c)) {}
  Eigen::Index size() const { return coefficients.size(); }
  /// Parseval: squared L2(0,1) norm of the represented polynomial.
  Scalar squared_norm() const { return coefficients.squaredNorm(); }
};

/// Clenshaw summation of sum_k c_k L_k(t).
template <typename Scalar>
Scalar expansion_eval(const LegendreExpansion<Scalar>& e, Scalar t) {
  if (!(t >= 0 && t <= 1)) throw std::domain_error("expansion_eval: t outside [0,1]");
  const Eigen::Index m = e.size();
  if (m == 0) return Scalar(0);
  const Scalar x = 2 * t - 1;
  // P_{k+1} = a_k P_k + beta_k P_{k-1}, a_k = (2k+1)x/(k+1), beta_k = -k/(k+1)
  Scalar b1(0), b2(0);
  for (Eigen::Index k = m - 1; k >= 0; --k) {
    const Scalar kk = Scalar(k);
    const Scalar ak = (2 * kk + 1) * x / (kk + 1);
    const Scalar beta_next = -(kk + 1) / (kk + 2);
    const Scalar b0 = e.coefficients(k) * std::sqrt(2 * kk + 1) + ak * b1 + beta_next * b2;
    b2 = b1;
    b1 = b0;
  }
  return b1;
}

/// sqrt(sum (a_i - b_i)^2) with the shorter vector zero-padded.
template <typename Scalar>
Scalar l2_distance(const LegendreExpansion<Scalar>& a, const LegendreExpansion<Scalar>& b) {
  const Eigen::Index m = std::max(a.size(), b.size());
  Scalar s(0);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Scalar d = (i < a.size() ? a.coefficients(i) : Scalar(0)) - (i < b.size() ? b.coefficients(i) : Scalar(0));
    s += d * d;
  }
  return std::sqrt(s);
}

/// Default rule for projecting onto m coefficients: ceil((m + oversample)/2) Gauss nodes.
template <typename Scalar>
QuadratureRule<Scalar> projection_rule(int m, int oversample = -1) {
  const int extra = oversample < 0 ? m + 64 : oversample;
  return gauss_legendre<Scalar>((m + extra + 1) / 2);
}

/// lambda_i = int_0^1 f(t) L_i(t) dt for i < m. Requires a rule exact for
/// degree 2(m-1) so that polynomials of degree < m are reproduced.
template <typename Scalar, typename F>
LegendreExpansion<Scalar> project(F&& f, int m, const QuadratureRule<Scalar>& quad) {
  if (m < 1) throw std::invalid_argument("project: m must be positive");
  if (quad.order < 2 * (m - 1))
    throw QuadratureError("project: quadrature order " + std::to_string(quad.order) + " below required " +
                          std::to_string(2 * (m - 1)));
  Vec<Scalar> c = Vec<Scalar>::Zero(m);
  Vec<Scalar> comp = Vec<Scalar>::Zero(m);
  for (std::size_t q = 0; q < quad.size(); ++q) {
    const Scalar fw = f(quad.nodes[q]) * quad.weights[q];
    const Vec<Scalar> l = legendre_all<Scalar>(m, quad.nodes[q]);
    for (int i = 0; i < m; ++i) {
      const Scalar term = fw * l(i);
      const Scalar t = c(i) + term;
      comp(i) += (std::abs(c(i)) >= std::abs(term)) ? (c(i) - t) + term : (term - t) + c(i);
      c(i) = t;
    }
  }
  return LegendreExpansion<Scalar>(c + comp);
}

template <typename Scalar, typename F>
LegendreExpansion<Scalar> project(F&& f, int m) {
  return project<Scalar>(std::forward<F>(f), m, projection_rule<Scalar>(m));
}

}  // namespace hmp
