// Cross-module properties over wider parameter ranges than the unit tests.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "hmp/range_diagnostics.hpp"
#include "hmp/stability_lab.hpp"
#include "oracles.hpp"

using namespace hmp;

namespace {

const std::vector<double> kDeltas{1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7};

const std::vector<AmplificationEstimate>& amplification_grid() {
  static const std::vector<AmplificationEstimate> grid = [] {
    std::vector<AmplificationEstimate> g;
    for (Index n = 1; n <= 12; ++n) g.push_back(amplification_experiment(peaked_profile<double>(), n, kDeltas, 20, 42));
    return g;
  }();
  return grid;
}

}  // namespace

TEST_CASE("inverse factor signs alternate along rows") {
  for (Index n = 1; n <= 30; ++n) {
    const FactoredTriangular f = inverse_factor_Linv(n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j <= i; ++j) CHECK(f.rational_part(i, j).sign() == (((i + j) % 2) ? -1 : 1));
  }
}

TEST_CASE("lambda_max of H_n^{-1} increases and stays below exp(3.526 n)") {
  double prev = 0;
  for (Index n = 1; n <= 30; ++n) {
    const double lam = spectral_norm(inverse_hilbert(n)).value.to_double();
    CHECK(lam > prev);
    CHECK(std::log(lam) / static_cast<double>(n) <= 3.526);
    prev = lam;
  }
}

TEST_CASE("legendre values are bounded by sqrt(2k+1)") {
  for (int k = 0; k <= 200; ++k)
    for (int s = 0; s <= 400; ++s) {
      const double t = s / 400.0;
      CHECK(std::abs(legendre_eval(k, t)) <= std::sqrt(2.0 * k + 1) * (1 + 1e-13));
    }
}

TEST_CASE("projection then evaluation reproduces polynomials") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-1, 1), pt(0, 1);
  for (int m : {3, 8, 15}) {
    std::vector<double> c(static_cast<std::size_t>(m));
    for (auto& x : c) x = u(gen);
    const auto f = polynomial<double>(c);
    const auto e = project<double>(f.value, m);
    for (int s = 0; s < 50; ++s) {
      const double t = pt(gen);
      CHECK(std::abs(expansion_eval(e, t) - f.value(t)) <= 1e-10 * std::max(1.0, std::abs(f.value(t))));
    }
  }
}

TEST_CASE("projection orthonormality on the default rule") {
  const auto rule = projection_rule<double>(12);
  for (int a = 0; a < 12; ++a)
    for (int b = 0; b < 12; ++b)
      CHECK(std::abs(rule.integrate([&](double t) { return legendre_eval(a, t) * legendre_eval(b, t); }) -
                     (a == b ? 1.0 : 0.0)) <= 1e-12);
}

TEST_CASE("the two forward paths agree for smooth data") {
  const auto f = cubic_exp<double>();
  const auto y = forward_moments(f, 10);
  double prev = 1e9;
  for (int m : {4, 8, 12, 16}) {
    const auto z = forward_from_expansion(project<double>(f.value, m), 10);
    const double d = (y.values - z.values).norm();
    CHECK(d < prev);
    prev = d;
  }
  CHECK(prev <= 1e-12);
}

TEST_CASE("forward map is bounded by sqrt(pi)") {
  for (const auto& f : {cubic_exp<double>(), abs_kink<double>(), peaked_profile<double>(), scaled_monomial<double>(3)}) {
    const double y = forward_moments(f, 200).values.norm();
    CHECK(y <= std::sqrt(M_PI) * sobolev_norm(f, NormKind::L2) * (1 + 1e-10));
  }
}

TEST_CASE("scaled monomials witness non-compactness") {
  double prev = 0;
  for (int i : {1, 2, 4, 8, 16, 64, 256}) {
    const double s = monomial_moment_norm_sq(i);
    CHECK(s > static_cast<double>(i) / (i + 1));
    CHECK(s > prev);
    prev = s;
    // first component sqrt(i)/(i+1) tends to zero
    CHECK(forward_moments(scaled_monomial<double>(i), 1).values(0) == doctest::Approx(std::sqrt(double(i)) / (i + 1)));
  }
  CHECK(monomial_moment_norm_sq(100000) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("T_N entries") {
  for (Index N = 1; N <= 60; ++N) {
    const RationalMatrix t = build_TN(N);
    for (Index k = 1; k < std::min<Index>(N, 5); ++k) CHECK(t(k, k) < t(k - 1, k - 1));
  }
  for (Index k = 0; k < 5; ++k) {
    Rational prev(0L);
    for (Index N = k + 1; N <= 60; ++N) {
      const Rational v = build_TN(N)(k, k);
      if (k == 0) CHECK(v == Rational(1L));
      else CHECK(v > prev);
      CHECK(v <= Rational(1L));
      prev = v;
    }
    CHECK(prev.to_double() >= 1 - static_cast<double>(k * (k + 1)) / 60.0);
  }
}

TEST_CASE("range statistics coincide on rational data") {
  std::mt19937_64 gen(3);
  std::uniform_int_distribution<long> num(-20, 20);
  for (Index N = 1; N <= 15; ++N) {
    RationalVector y(N);
    for (Index j = 0; j < N; ++j) y(j) = Rational(num(gen), static_cast<unsigned long>(j + 2));
    const auto pr = range_statistics(y, N);
    CHECK(pr.hausdorff_side == pr.picard_side);
  }
}

TEST_CASE("stable family ratio matches the closed D1 constant") {
  for (double a : {-0.1, -0.25, -0.4, -0.45}) {
    const auto s = stable_family(a, 64);
    const double ratio = s.hardy_norm_sq / s.l2_function_norm_sq;
    CHECK(std::abs(ratio - s.d1_sq_closed) <= (s.hardy_uncertainty + std::abs(s.hardy_tail) * 1e-3) / s.l2_function_norm_sq + 1e-10);
  }
}

TEST_CASE("D1 constant grows without bound as alpha decreases to -1/2") {
  const double near = stable_family(-0.499, 8).d1_sq_closed;
  MESSAGE("D1^2 at alpha=-0.499: " << near << ", limit 1/pi = " << 1 / M_PI);
  CHECK(near > 10.0);
}

TEST_CASE("stable family coefficient envelope") {
  const auto s = stable_family(-0.25, 10000, 1 << 14);
  CHECK(s.envelope_c1 > 0);
  CHECK(std::isfinite(s.envelope_c2));
  for (Index j = 1; j <= 10000; j += 97) {
    const double y = s.coeffs[static_cast<std::size_t>(j - 1)];
    const double p = std::pow(static_cast<double>(j), -0.75);
    CHECK(y >= s.envelope_c1 * p * (1 - 1e-12));
    CHECK(y <= s.envelope_c2 * p * (1 + 1e-12));
  }
}

TEST_CASE("error split with the exact pseudoinverse norm") {
  for (const auto& e : amplification_grid())
    for (std::size_t d = 0; d < kDeltas.size(); ++d)
      CHECK(e.max_total_error[d] <= std::hypot(e.exact_norm * kDeltas[d], e.projection_error) * (1 + 1e-9));
}

TEST_CASE("amplification factor within a factor 2 of the operator norm") {
  for (const auto& e : amplification_grid()) {
    INFO("n = " << e.n << ", f_n = " << e.f_n << ", norm = " << e.exact_norm);
    CHECK(e.f_n >= e.exact_norm / 2);
    CHECK(e.f_n <= e.exact_norm * 2);
  }
}

TEST_CASE("amplification rate plateau") {
  for (const auto& e : amplification_grid())
    if (e.n >= 4) {
      INFO("n = " << e.n << ", rate = " << e.rate);
      CHECK(e.rate >= 1.0);
      CHECK(e.rate <= kGrowthRate + 0.1);
    }
}

TEST_CASE("total error within the f_n envelope") {
  for (const auto& e : amplification_grid())
    for (std::size_t d = 0; d < kDeltas.size(); ++d) {
      INFO("n = " << e.n << ", delta = " << kDeltas[d]);
      CHECK(e.mean_total_error[d] <= std::hypot(e.f_n * kDeltas[d], e.projection_error) * 1.2);
    }
}

TEST_CASE("point value rates for x = t") {
  Vec<double> v(10000);
  for (Index j = 0; j < v.size(); ++j) v(j) = 1.0 / static_cast<double>(j + 2);
  const MomentSequence<double> y(v);
  double log_lo = 1e9, log_hi = 0;
  for (Index N = 1; N <= 10000; ++N) {
    const double err = std::abs(point_value_estimator(y, N) - 1);
    const double n = static_cast<double>(N);
    CHECK(err <= (std::log(n) + 1) / n);
    if (N >= 10) {
      log_lo = std::min(log_lo, err * n / std::log(n));
      log_hi = std::max(log_hi, err * n / std::log(n));
    }
  }
  // ln N / N is the sharp rate; err sqrt(N) keeps shrinking, so no c / sqrt(N) is tight
  CHECK(log_lo > 0.5);
  CHECK(log_hi < 1.5);
  double prev = 1e9;
  for (Index N : {100, 1000, 10000}) {
    const double scaled = std::abs(point_value_estimator(y, N) - 1) * std::sqrt(static_cast<double>(N));
    CHECK(scaled < prev / 2);
    prev = scaled;
  }
}

TEST_CASE("counterexample ratio increases as r decreases") {
  for (double mu : {0.5, 0.25}) {
    CounterexampleOptions o;
    o.q_max = 10;
    const auto res = holder_counterexample(mu, 1, 1e300, o);
    for (std::size_t q = 1; q < res.steps.size(); ++q) CHECK(res.steps[q].ratio > res.steps[q - 1].ratio);
  }
}

TEST_CASE("json round trip of command tables") {
  for (const std::string cmd : {"hilbert", "hausdorff", "growth", "counterexample", "laplace"}) {
    cli::ExperimentConfig cfg;
    cfg.command = cmd;
    cfg.n = 12;
    cfg.inverse = true;
    const Table t = cli::execute(cfg).table;
    std::ostringstream os;
    write_json(t, os);
    CHECK(read_json(os.str(), t.command, t.columns, column_kinds(t)) == t);
  }
}

TEST_CASE("growth plot data has the four series") {
  cli::ExperimentConfig cfg;
  cfg.command = "growth";
  cfg.n_max = 5;
  const auto out = cli::execute(cfg);
  const auto dir = std::filesystem::temp_directory_path() / "hmp_props_plot";
  std::filesystem::remove_all(dir);
  const auto files = emit_plotdata(out.table, out.series, dir);
  CHECK(files.size() == 4);
  for (const char* s : {"bound", "norm", "row_max", "diag"}) CHECK(std::filesystem::exists(dir / ("growth_" + std::string(s) + ".dat")));
}
