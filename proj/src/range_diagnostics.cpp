#include "hmp/range_diagnostics.hpp"

#include <cmath>

namespace hmp {

namespace {

void require_level(Index N) {
  if (N < 1) throw std::invalid_argument("level must be at least 1");
}

Rational sq(const Rational& x) { return x * x; }

// (M y)_i for the rational part M of L^{-1}, i < n.
RationalVector apply_inverse_core(const RationalVector& y, Index n) {
  const FactoredTriangular linv = inverse_factor_Linv(n);
  RationalVector out(n);
  for (Index i = 0; i < n; ++i) {
    Rational s(0L);
    for (Index j = 0; j <= i; ++j) s += linv.rational_part(i, j) * y(j);
    out(i) = s;
  }
  return out;
}

Rational weighted_square_sum(const RationalVector& my, Index n) {
  Rational s(0L);
  for (Index i = 0; i < n; ++i) s += Rational(2 * i + 1) * sq(my(i));
  return s;
}

}  // namespace

Rational forward_differences(const RationalVector& y, Index m, Index n) {
  if (m < 0 || n < 0 || m + n + 1 > y.size()) throw std::out_of_range("forward_differences: index beyond truncation");
  Rational s(0L);
  for (Index l = 0; l <= n; ++l) {
    const Rational term = binomial(static_cast<long>(n), static_cast<unsigned long>(l)) * y(m + l);
    if (l % 2) s -= term;
    else s += term;
  }
  return s;
}

HausdorffStats<Rational> hausdorff_criterion(const RationalVector& y, Index N) {
  if (N < 0 || N + 1 > y.size()) throw std::out_of_range("hausdorff_criterion: level beyond truncation");
  HausdorffStats<Rational> st;
  st.N = N;
  Rational sum(0L);
  for (Index m = 0; m <= N; ++m) {
    Rational lam = binomial(static_cast<long>(N), static_cast<unsigned long>(m)) * forward_differences(y, m, N - m);
    sum += sq(lam);
    st.lambda.push_back(std::move(lam));
  }
  st.criterion_value = Rational(N + 1) * sum;
  st.picard_partial = weighted_square_sum(apply_inverse_core(y, N + 1), N + 1);
  return st;
}

RationalMatrix build_RN(Index N) {
  require_level(N);
  RationalMatrix r = RationalMatrix::Zero(N, N);
  for (Index a = 0; a < N; ++a)
    for (Index b = a; b < N; ++b) {
      Rational v = binomial(static_cast<long>(N - 1 - a), static_cast<unsigned long>(b - a));
      r(a, b) = ((a + b) % 2 == 0) ? v : -v;
    }
  return r;
}

ScaledMatrix build_DN(Index N) {
  require_level(N);
  ScaledMatrix d;
  d.core = RationalMatrix::Zero(N, N);
  for (Index a = 0; a < N; ++a) d.core(a, a) = binomial(static_cast<long>(N - 1), static_cast<unsigned long>(a));
  d.row_weights = Weights(static_cast<std::size_t>(N), static_cast<std::int64_t>(N));
  d.col_weights = Weights(static_cast<std::size_t>(N), 1);
  return d;
}

RationalMatrix build_TN(Index N) {
  require_level(N);
  RationalMatrix t = RationalMatrix::Zero(N, N);
  for (Index a = 0; a < N; ++a)
    t(a, a) = binomial(static_cast<long>(N - 1), static_cast<unsigned long>(a)) /
              binomial(static_cast<long>(N + a), static_cast<unsigned long>(a));
  return t;
}

TNCheck verify_TN_identity(Index N) {
  const ScaledMatrix v = build_DN(N) * ScaledMatrix::plain(build_RN(N)) * to_scaled(cholesky_factor_L(N));
  TNCheck out;
  out.gram = v.transpose() * v;
  const RationalMatrix t = build_TN(N);
  out.residual = out.gram.core;
  for (Index k = 0; k < N; ++k) out.residual(k, k) -= t(k, k) / Rational(out.gram.row_weights[static_cast<std::size_t>(k)]);
  out.exact = true;
  for (Index i = 0; i < N; ++i)
    for (Index j = 0; j < N; ++j) out.exact = out.exact && out.residual(i, j).is_zero();
  // the residual is measured in core units; the weights must pair up on the diagonal
  out.exact = out.exact && out.gram.row_weights == out.gram.col_weights;
  return out;
}

RangeStatisticPair range_statistics(const RationalVector& y, Index N) {
  require_level(N);
  if (N > y.size()) throw std::out_of_range("range_statistics: level beyond truncation");
  const RationalMatrix r = build_RN(N);
  RangeStatisticPair out;
  Rational h(0L);
  for (Index i = 0; i < N; ++i) {
    Rational ry(0L);
    for (Index j = i; j < N; ++j) ry += r(i, j) * y(j);
    h += sq(binomial(static_cast<long>(N - 1), static_cast<unsigned long>(i)) * ry);
  }
  out.hausdorff_side = Rational(N) * h;
  const RationalMatrix t = build_TN(N);
  const RationalVector my = apply_inverse_core(y, N);
  Rational p(0L);
  for (Index k = 0; k < N; ++k) p += t(k, k) * Rational(2 * k + 1) * sq(my(k));
  out.picard_side = p;
  return out;
}

std::vector<Rational> picard_partial_sums(const RationalVector& y, const std::vector<Index>& levels) {
  Index top = 0;
  for (Index N : levels) top = std::max(top, N);
  if (top > y.size()) throw std::out_of_range("picard_partial_sums: level beyond truncation");
  const RationalVector my = top > 0 ? apply_inverse_core(y, top) : RationalVector();
  std::vector<Rational> out;
  for (Index N : levels) out.push_back(weighted_square_sum(my, N));
  return out;
}

RationalVector monomial_moments_exact(Index n, long p) {
  RationalVector y(n);
  for (Index j = 0; j < n; ++j) y(j) = Rational(1, static_cast<unsigned long>(j + 1 + p));
  return y;
}

StableFamilyMember stable_family(double alpha, Index J, Index K) {
  if (!(alpha > -0.5 && alpha < 0.0)) throw std::domain_error("stable_family: alpha outside (-1/2, 0)");
  if (J < 1 || K < 4) throw std::invalid_argument("stable_family: truncation too short");
  StableFamilyMember s;
  s.alpha = alpha;
  s.l2_function_norm_sq = 1.0 / (1.0 + 2.0 * alpha);
  s.hardy_norm_sq_closed = std::tgamma(1.0 + 2.0 * alpha) / std::pow(std::tgamma(1.0 + alpha), 2);
  s.d1_sq_closed = s.hardy_norm_sq_closed * (1.0 + 2.0 * alpha);

  // c_k = C(alpha,k)(-1)^k, c_{k+1} = c_k (k - alpha)/(k + 1)
  const Index len = std::max(J, K);
  std::vector<double> c(static_cast<std::size_t>(len));
  c[0] = 1.0;
  for (Index k = 0; k + 1 < len; ++k)
    c[static_cast<std::size_t>(k + 1)] = c[static_cast<std::size_t>(k)] * (static_cast<double>(k) - alpha) / static_cast<double>(k + 1);
  s.coeffs.assign(c.begin(), c.begin() + J);

  const double e = 1.0 + 2.0 * alpha;
  // sum_{k<K} c_k^2 + c_env^2 (K - 1/2)^(-e) / e with c_env fitted at k = K-1
  auto estimate = [&](Index upto, double& tail) {
    double sum = 0, comp = 0;
    for (Index k = upto - 1; k >= 0; --k) {
      const double term = c[static_cast<std::size_t>(k)] * c[static_cast<std::size_t>(k)];
      const double t = sum + term;
      comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
      sum = t;
    }
    const double kl = static_cast<double>(upto - 1);
    const double c_env = c[static_cast<std::size_t>(upto - 1)] * std::pow(kl, 1.0 + alpha);
    tail = c_env * c_env * std::pow(static_cast<double>(upto) - 0.5, -e) / e;
    return sum + comp + tail;
  };
  double tail_half = 0;
  s.hardy_norm_sq = estimate(K, s.hardy_tail);
  s.hardy_uncertainty = std::abs(s.hardy_norm_sq - estimate(K / 2, tail_half));

  s.positive = true;
  s.decreasing = true;
  s.envelope_c1 = std::numeric_limits<double>::infinity();
  s.envelope_c2 = 0;
  for (Index j = 1; j <= J; ++j) {
    const double y = c[static_cast<std::size_t>(j - 1)];
    s.positive = s.positive && y > 0;
    if (j > 1) s.decreasing = s.decreasing && y < c[static_cast<std::size_t>(j - 2)];
    const double scaled = y * std::pow(static_cast<double>(j), 1.0 + alpha);
    s.envelope_c1 = std::min(s.envelope_c1, scaled);
    s.envelope_c2 = std::max(s.envelope_c2, scaled);
  }
  return s;
}

}  // namespace hmp
