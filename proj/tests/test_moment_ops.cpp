#include <doctest.h>

#include <cmath>
#include <random>

#include "hmp/moment_ops.hpp"
#include "oracles.hpp"

using namespace hmp;

TEST_CASE("polynomial parser") {
  CHECK(parse_polynomial("3t^2-1") == std::vector<double>{-1, 0, 3});
  CHECK(parse_polynomial("x") == std::vector<double>{0, 1});
  CHECK(parse_polynomial("-2*t^3 + 0.5") == std::vector<double>{0.5, 0, 0, -2});
  CHECK_THROWS_AS(parse_polynomial("3y"), std::invalid_argument);
}

TEST_CASE("test functions carry consistent derivatives") {
  CHECK(derivative_consistency(cubic_exp<double>()) <= 1e-6);
  CHECK(derivative_consistency(peaked_profile<double>()) <= 1e-5);
  CHECK(derivative_consistency(polynomial<double>({1, -2, 0, 4})) <= 1e-6);
}

TEST_CASE("forward moments of monomials and of a kink") {
  const auto y = forward_moments(polynomial<long double>({0, 0, 1}), 30, 1e-18L);
  for (Index j = 0; j < 30; ++j) CHECK(static_cast<double>(std::abs(y.values(j) - 1.0L / (j + 3))) <= 1e-18);
  // int |t - 1/2| t^0 = 1/4, t^1 = 1/8
  const auto k = forward_moments(abs_kink<double>(), 2);
  CHECK(k.values(0) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(k.values(1) == doctest::Approx(0.125).epsilon(1e-14));
}

TEST_CASE("forward moments of an endpoint singularity") {
  // x = (1-t)^{-1/3}: y_j = B(j, 2/3). Panels cannot shrink below the double
  // spacing at t = 1, which caps the accuracy near eps^{2/3}.
  const auto f = power_singular<double>(-1.0 / 3);
  const auto y = forward_moments(f, 6, 1e-9);
  for (Index j = 0; j < 6; ++j) {
    const double b = std::exp(std::lgamma(j + 1.0) + std::lgamma(2.0 / 3) - std::lgamma(j + 1.0 + 2.0 / 3));
    CHECK(std::abs(y.values(j) - b) <= 1e-9);
  }
}

TEST_CASE("forward moments names the failing components") {
  TestFunction<double> noisy;
  noisy.label = "oscillating";
  noisy.value = [](double t) { return std::sin(5e4 * t * t); };
  try {
    forward_moments(noisy, 3, 1e-15, 1);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(std::string(e.what()).find("components") != std::string::npos);
  }
}

TEST_CASE("forward map from an expansion is the exact factor") {
  LegendreExpansion<double> e(Vec<double>::Zero(3));
  e.coefficients(1) = std::sqrt(3.0) / 2;
  e.coefficients(2) = std::sqrt(5.0) / 10;  // 3t^2 - 1
  const auto y = forward_from_expansion(e, 4);
  for (Index j = 0; j < 4; ++j) CHECK(y.values(j) == doctest::Approx(3.0 / (j + 3) - 1.0 / (j + 1)).epsilon(1e-15));
}

TEST_CASE("pseudoinverse inverts the forward map") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<long double> u(-1, 1);
  for (Index n : {1, 4, 9}) {
    Vec<long double> c(n);
    for (Index i = 0; i < n; ++i) c(i) = u(gen);
    const LegendreExpansion<long double> e(c);
    const auto back = pseudoinverse(forward_from_expansion(e, n));
    CHECK(static_cast<double>(l2_distance(back, e)) <= 1e-16 * pseudoinverse_norm(n).to_double());
  }
  CHECK_THROWS_AS(pseudoinverse(MomentSequence<double>(Vec<double>::Ones(3)), inverse_factor_Linv(4)),
                  std::invalid_argument);
}

TEST_CASE("adjoint is the polynomial with moment coefficients") {
  MomentSequence<double> y(Vec<double>::LinSpaced(3, 1, 3));
  CHECK(adjoint_apply(y, 0.5) == doctest::Approx(1 + 2 * 0.5 + 3 * 0.25));
  CHECK_THROWS_AS(adjoint_apply(y, 2.0), std::domain_error);
}

TEST_CASE("projection error for the kink") {
  // reference sqrt(||f||^2 - sum_{k<4} c_k^2) at 30 digits
  const auto pe = projection_error(abs_kink<double>(), 4);
  CHECK(pe.error == doctest::Approx(0.03608439182435161).epsilon(1e-10));
  CHECK(pe.tail_sum <= pe.error);
}

TEST_CASE("sobolev norms") {
  const auto lin = polynomial<double>({0, 1});
  CHECK(sobolev_norm(lin, NormKind::L2) == doctest::Approx(std::sqrt(1.0 / 3)));
  CHECK(sobolev_norm(lin, NormKind::H1) == doctest::Approx(std::sqrt(4.0 / 3)));
  CHECK(sobolev_norm(lin, NormKind::H1Seminorm) == doctest::Approx(1.0));
  CHECK(sobolev_norm(lin, NormKind::W1Inf) == doctest::Approx(1.0));
  CHECK(sobolev_norm(abs_kink<double>(), NormKind::H1) == doctest::Approx(std::sqrt(1.0 / 12 + 1)));
  CHECK(sobolev_norm(cubic_exp<double>(), NormKind::H2) == doctest::Approx(oracle::kCubicExpH2Norm).epsilon(1e-13));
  CHECK(sobolev_norm(cubic_exp<double>(), NormKind::H2) == doctest::Approx(oracle::kCubicExpH2Norm).epsilon(1e-13));
  CHECK_THROWS_AS(sobolev_norm(abs_kink<double>(), NormKind::H2), std::invalid_argument);
}

TEST_CASE("rate check enforces the a priori budget") {
  const auto f = abs_kink<double>();
  CHECK_THROWS_AS(h1_rate_check(f, {0.5, NormKind::H1}, {2}), BudgetError);
  for (const auto& r : h1_rate_check(f, {sobolev_norm(f, NormKind::H1), NormKind::H1}, {2, 3, 8})) CHECK(r.holds);
}

TEST_CASE("monomial moment norm") {
  // i = 1: sum_j 1/(1+j)^2 = pi^2/6 - 1
  CHECK(monomial_moment_norm_sq(1) == doctest::Approx(M_PI * M_PI / 6 - 1).epsilon(1e-12));
  CHECK(monomial_moment_norm_sq(4) > 0.8);
}

TEST_CASE("pseudoinverse norm and growth fit") {
  CHECK(pseudoinverse_norm(2).to_double() == doctest::Approx(oracle::kLinv2Norm).epsilon(1e-15));
  std::vector<Index> ns;
  for (Index n = 10; n <= 30; ++n) ns.push_back(n);
  const GrowthFit g = fit_pseudoinverse_growth(ns);
  CHECK(g.slope > 1.5);
  CHECK(g.slope < kGrowthRate);
  for (Index n : ns) CHECK(std::log(pseudoinverse_norm(n).to_double()) <= 0.5 * g.ln_C_hat + kGrowthRate * n + 1e-9);
}
