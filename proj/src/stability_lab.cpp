#include "hmp/stability_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <utility>

namespace hmp {

double lambert_w(double z) {
  constexpr double inv_e = 0.36787944117144233;
  if (!(z >= -inv_e)) {
    // allow the rounding of -1/e itself
    if (z >= -inv_e * (1 + 4 * std::numeric_limits<double>::epsilon())) return -1.0;
    throw std::domain_error("lambert_w: argument below -1/e");
  }
  if (z == 0) return 0.0;
  if (std::isinf(z)) return z;
  double w;
  if (z < -0.25) {
    const double p = std::sqrt(2.0 * (std::numbers::e * z + 1.0));
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  } else if (z < 3.0) {
    const double l = std::log1p(z);
    w = l * (1.0 - std::log1p(l) / (2.0 + l));
  } else {
    const double l1 = std::log(z), l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }
  for (int it = 0; it < 64; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - z;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= step;
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(w))) break;
  }
  return w;
}

StabilityBound stability_bound(double delta, double E, double C_hat) {
  if (!(delta > 0 && E > 0 && C_hat > 0)) throw std::invalid_argument("stability_bound: arguments must be positive");
  StabilityBound b;
  b.W_arg = 7.0 * E / (8.0 * std::sqrt(C_hat) * delta);
  b.asymptotic = b.W_arg > std::numbers::e;
  b.W = lambert_w(b.W_arg);
  b.N_star = 4.0 * b.W / 7.0;
  b.bound = 7.0 * E / (std::sqrt(32.0) * b.W);
  b.bound_log = 7.0 * E / (std::sqrt(8.0) * std::log(b.W_arg));
  b.term_bias = E * E / (4.0 * b.N_star * b.N_star);
  b.term_noise = C_hat * std::exp(3.5 * b.N_star) * delta * delta;
  return b;
}

std::mt19937_64 noise_stream(std::uint64_t seed, std::uint64_t n, std::uint64_t realization) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(realization)};
  return std::mt19937_64(seq);
}

AmplificationEstimate amplification_experiment(const TestFunction<double>& f, Index n, const std::vector<double>& deltas,
                                               int R, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("amplification_experiment: n must be positive");
  if (R < 1) throw std::invalid_argument("amplification_experiment: need at least one realization");
  if (deltas.size() < 2) throw std::invalid_argument("amplification_experiment: need at least two noise levels");
  const auto [lo, hi] = std::minmax_element(deltas.begin(), deltas.end());
  if (!(*lo > 0) || *hi / *lo < 100.0) throw std::invalid_argument("amplification_experiment: deltas must span two decades");

  AmplificationEstimate est;
  est.n = n;
  est.realizations = R;
  est.delta_grid = deltas;
  const std::size_t nd = deltas.size();
  est.mean_noise_error.assign(nd, 0.0);
  est.mean_total_error.assign(nd, 0.0);
  est.max_total_error.assign(nd, 0.0);

  const MomentSequence<double> y = forward_moments(f, n, 1e-14);
  const FactoredTriangular linv = inverse_factor_Linv(n);
  const LegendreExpansion<double> x_dag = pseudoinverse(y, linv);
  const LegendreExpansion<double> truth = project<double>(f.value, static_cast<int>(n), adapted_rule(f, static_cast<int>(n) + 16, 2));
  est.projection_error = projection_error(f, static_cast<int>(n)).error;
  est.exact_norm = pseudoinverse_norm(n).to_double();

  const double floor = 1e3 * std::numeric_limits<double>::epsilon() * std::max(1.0, x_dag.coefficients.norm());
  double slope_sum = 0, r2_sum = 0;
  for (int r = 0; r < R; ++r) {
    std::mt19937_64 gen = noise_stream(seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(r));
    std::vector<double> err(nd);
    for (std::size_t d = 0; d < nd; ++d) {
      const LegendreExpansion<double> xd = pseudoinverse(noisy_data(y, deltas[d], gen), linv);
      err[d] = l2_distance(xd, x_dag);
      const double dt = l2_distance(xd, truth);
      const double total = std::sqrt(dt * dt + est.projection_error * est.projection_error);
      est.mean_noise_error[d] += err[d] / R;
      est.mean_total_error[d] += total / R;
      est.max_total_error[d] = std::max(est.max_total_error[d], total);
    }
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t d = 0; d < nd; ++d) {
      sxy += deltas[d] * err[d];
      sxx += deltas[d] * deltas[d];
      syy += err[d] * err[d];
    }
    const double slope = sxy / sxx;
    double sse = 0;
    for (std::size_t d = 0; d < nd; ++d) sse += (err[d] - slope * deltas[d]) * (err[d] - slope * deltas[d]);
    est.slopes.push_back(slope);
    slope_sum += slope;
    r2_sum += syy > 0 ? 1.0 - sse / syy : 0.0;
    if (*std::max_element(err.begin(), err.end()) < floor) est.degenerate = true;
  }
  est.f_n = slope_sum / R;
  est.r_squared = r2_sum / R;
  est.rate = std::log(est.f_n) / static_cast<double>(n);
  return est;
}

std::vector<GrowthRow> linv_growth_study(Index n_max, const PowerIterationOptions& opts) {
  if (n_max < 1) throw std::invalid_argument("linv_growth_study: n_max must be positive");
  BigFloat::PrecisionScope scope(opts.precision_bits);
  std::vector<GrowthRow> rows;
  for (Index i = 1; i <= n_max; ++i) {
    GrowthRow row;
    row.i = i;
    const FactoredTriangular linv = inverse_factor_Linv(i);
    const BigMatrix li = linv.to_bigfloat();
    const BigMatrix gram = li * li.transpose();
    const BigFloat lam_gram = spectral_norm(gram, opts).value;
    const BigFloat lam_hinv = spectral_norm(inverse_hilbert(i), opts).value;
    row.norm = sqrt(lam_gram).to_double();
    row.hinv_norm = lam_hinv.to_double();
    row.relative_gap = (abs(lam_gram - lam_hinv) / lam_hinv).to_double();

    const Index last = i - 1;
    Index best = 0;
    for (Index j = 1; j <= last; ++j)
      if (abs(linv.rational_part(last, j)) > abs(linv.rational_part(last, best))) best = j;
    row.row_max_col = best + 1;
    row.row_max = linv.entry(last, best) < 0 ? -linv.entry(last, best) : linv.entry(last, best);
    const double d = linv.entry(last, last);
    row.diag = d < 0 ? -d : d;
    row.bound = std::exp(kGrowthRate * static_cast<double>(i));
    rows.push_back(row);
  }
  return rows;
}

std::vector<PointValueRow> point_value_noise_study(const MomentSequence<double>& y, double x1,
                                                   const std::vector<double>& deltas, Index N_max) {
  if (N_max < 1 || N_max > y.n()) throw std::out_of_range("point_value_noise_study: N_max outside 1..n");
  std::vector<PointValueRow> rows;
  for (double delta : deltas) {
    PointValueRow row;
    row.delta = delta;
    row.min_error = std::numeric_limits<double>::infinity();
    // running sums: S = sum j y_j, Q = sum j^2
    double S = 0, S_c = 0, Q = 0;
    for (Index N = 1; N <= N_max; ++N) {
      const double term = static_cast<double>(N) * y.values(N - 1);
      const double t = S + term;
      S_c += (std::abs(S) >= std::abs(term)) ? (S - t) + term : (term - t) + S;
      S = t;
      Q += static_cast<double>(N) * static_cast<double>(N);
      const double bias = (S + S_c) / static_cast<double>(N) - x1;
      // e_j = sign(bias) delta j / sqrt(Q) shifts the estimate by sign(bias) delta sqrt(Q)/N
      const double shift = delta * std::sqrt(Q) / static_cast<double>(N);
      const double err = std::abs(bias) + shift;
      if (err < row.min_error) {
        row.min_error = err;
        row.best_N = N;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope: need two or more pairs");
  double mx = 0, my = 0;
  const double k = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]) / k;
    my += std::log(y[i]) / k;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

MotherBump::MotherBump(int max_order) {
  if (max_order < 0) throw std::invalid_argument("MotherBump: negative order");
  poly_.push_back({{0, 0, 1.0}});
  for (int n = 0; n < max_order; ++n) {
    std::map<std::pair<int, int>, double> next;
    for (const Term& t : poly_.back()) {
      // d/ds u^a v^b = -a u^{a+1} v^b + b u^a v^{b+1};  phi' = u^2 - v^2
      if (t.a) next[{t.a + 1, t.b}] -= t.a * t.c;
      if (t.b) next[{t.a, t.b + 1}] += t.b * t.c;
      next[{t.a + 2, t.b}] += t.c;
      next[{t.a, t.b + 2}] -= t.c;
    }
    std::vector<Term> terms;
    for (const auto& [ab, c] : next)
      if (c != 0.0) terms.push_back({ab.first, ab.second, c});
    poly_.push_back(std::move(terms));
  }
}

double MotherBump::derivative(int order, double s) const {
  if (order < 0 || order > max_order()) throw std::out_of_range("MotherBump: order not prepared");
  if (!(s > 0.0 && s < 1.0)) return 0.0;
  const double u = 1.0 / s, v = 1.0 / (1.0 - s);
  if (u + v > 700.0) return 0.0;
  const double lu = std::log(u), lv = std::log(v), phi = -u - v;
  double sum = 0;
  for (const Term& t : poly_[static_cast<std::size_t>(order)]) sum += t.c * std::exp(t.a * lu + t.b * lv + phi);
  return sum;
}

int counterexample_moment_count(double mu, double p) {
  if (!(mu > 0 && mu < 1)) throw std::domain_error("counterexample: mu outside (0,1)");
  const double bound = (2.0 * p + 1.0) * (1.0 - mu) / mu - 0.5;
  return bound < 0 ? 0 : static_cast<int>(std::floor(bound)) + 1;
}

CounterexampleResult holder_counterexample(double mu, int k, double C, const CounterexampleOptions& opts) {
  if (k < 1) throw std::invalid_argument("holder_counterexample: k must be at least 1");
  if (!(C > 0)) throw std::invalid_argument("holder_counterexample: target must be positive");
  CounterexampleResult res;
  res.mu = mu;
  res.k = k;
  res.p = k - 0.5;
  res.m = counterexample_moment_count(mu, res.p);
  res.target = C;
  if (opts.J <= res.m) throw std::invalid_argument("holder_counterexample: J must exceed m");

  const MotherBump bump(res.m + k);
  const QuadratureRule<double> rule = composite_rule(graded_breakpoints<double>({}, 32, false, false, 0), 30);
  double hk_sq = 0;
  for (int n = 0; n <= k; ++n)
    hk_sq += rule.integrate([&](double s) {
      const double d = bump.derivative(res.m + n, s);
      return d * d;
    });
  const double scale = 1.0 / std::sqrt(hk_sq);
  auto g = [&](int n, double s) { return scale * bump.derivative(res.m + n, s); };
  res.g_l2_norm = std::sqrt(rule.integrate([&](double s) { return g(0, s) * g(0, s); }));
  double check = 0;
  for (int n = 0; n <= k; ++n) check += rule.integrate([&](double s) { return g(n, s) * g(n, s); });
  res.g_hk_norm = std::sqrt(check);
  const double g_l1 = rule.integrate([&](double s) { return std::abs(g(0, s)); });

  res.moments.resize(static_cast<std::size_t>(opts.J));
  for (int j = 1; j <= opts.J; ++j)
    res.moments[static_cast<std::size_t>(j - 1)] = rule.integrate([&](double s) { return g(0, s) * std::pow(s, j - 1); });
  for (int j = 1; j <= res.m; ++j)
    res.max_vanishing_moment = std::max(res.max_vanishing_moment, std::abs(res.moments[static_cast<std::size_t>(j - 1)]));

  // moments of x_r are r^{p+j} gamma_j; the first m vanish identically, so
  // ||A x_r|| = r^{p+m+1} sqrt(sum_{j>m} r^{2(j-m-1)} gamma_j^2) in log form
  double prev_ratio = 0;
  for (int q = 0; q <= opts.q_max; ++q) {
    CounterexampleStep st;
    st.q = q;
    st.r = std::ldexp(1.0, -q);
    const double ln_r = -q * std::numbers::ln2;
    double S = 0;
    for (int j = opts.J; j > res.m; --j) {
      const double gj = res.moments[static_cast<std::size_t>(j - 1)];
      S += std::exp(2.0 * (j - res.m - 1) * ln_r) * gj * gj;
    }
    st.ln_l2 = (res.p + 0.5) * ln_r + std::log(res.g_l2_norm);
    st.ln_moment = (res.p + res.m + 1) * ln_r + 0.5 * std::log(S);
    st.ratio = std::exp(st.ln_l2 - mu * st.ln_moment);
    st.growth = q > 0 ? st.ratio / prev_ratio : 0.0;
    st.growth_sq = st.growth * st.growth;
    prev_ratio = st.ratio;
    res.steps.push_back(st);
    res.r = st.r;
    res.ratio = st.ratio;
    // |gamma_j| <= ||g||_1, geometric in r^2 beyond J; vacuous at r = 1
    res.tail_bound = q == 0 ? std::numeric_limits<double>::infinity()
                            : g_l1 * g_l1 * std::exp((2.0 * res.p + 2.0 * opts.J + 2.0) * ln_r) / (1.0 - st.r * st.r);
    if (st.ratio > C) {
      res.met = true;
      break;
    }
  }
  return res;
}

std::vector<LaplaceRow> laplace_consistency(const TestFunction<double>& f, const std::vector<Index>& j_list, double tol) {
  if (j_list.empty()) return {};
  if (!(tol > 0)) throw std::invalid_argument("laplace_consistency: tol must be positive");
  const Index jmax = *std::max_element(j_list.begin(), j_list.end());
  if (*std::min_element(j_list.begin(), j_list.end()) < 1) throw std::invalid_argument("laplace_consistency: orders start at 1");
  const MomentSequence<double> y = forward_moments(f, jmax, std::min(tol * 1e-2, 1e-13));
  double sup = 0;
  for (int i = 0; i < kSupNormGrid; ++i) sup = std::max(sup, std::abs(f.value(static_cast<double>(i) / (kSupNormGrid - 1))));
  sup = std::max(sup, std::numeric_limits<double>::min());

  std::vector<LaplaceRow> rows;
  for (Index j : j_list) {
    LaplaceRow row;
    row.j = j;
    row.moment = y.values(j - 1);
    const double jd = static_cast<double>(j);
    row.cutoff = std::max(1.0, std::log(sup / (jd * tol * 1e-2)) / jd);
    const int panels = static_cast<int>(std::ceil(row.cutoff / 0.25));
    std::vector<double> breaks;
    for (int p = 0; p <= panels; ++p) breaks.push_back(row.cutoff * p / panels);
    const QuadratureRule<double> rule = composite_rule(breaks, 20);
    row.laplace = rule.integrate([&](double tau) { return std::exp(-jd * tau) * f.value(std::exp(-tau)); });
    row.tail_bound = sup * std::exp(-jd * row.cutoff) / jd;
    if (row.tail_bound > tol) throw QuadratureError("laplace_consistency: tail bound exceeds tolerance");
    row.difference = std::abs(row.moment - row.laplace);
    row.agrees = row.difference <= tol + row.tail_bound;
    rows.push_back(row);
  }
  return rows;
}

std::vector<double> eit_forward(const std::function<double(double)>& sigma, const std::vector<Index>& modes, double tol) {
  if (modes.empty()) return {};
  const Index nmax = *std::max_element(modes.begin(), modes.end());
  if (*std::min_element(modes.begin(), modes.end()) < 1) throw std::invalid_argument("eit_forward: modes start at 1");
  TestFunction<double> st;
  st.label = "sigma(sqrt t)";
  st.value = [sigma](double t) { return sigma(std::sqrt(t)); };
  st.singular_left = true;
  const MomentSequence<double> y = forward_moments(st, nmax, tol);
  std::vector<double> out;
  for (Index n : modes) out.push_back(0.5 * static_cast<double>(n + 1) * y.values(n - 1));
  return out;
}

}  // namespace hmp
