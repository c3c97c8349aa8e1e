#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace hmp {

/// Analytic function on [0,1] with optional derivatives.
///
/// `breakpoints` lists interior points of reduced smoothness and the
/// `singular_*` flags mark endpoints where a derivative blows up; both steer
/// the composite quadrature.
template <typename Scalar>
struct TestFunction {
  std::string label;
  std::function<Scalar(Scalar)> value;
  std::function<Scalar(Scalar)> derivative;
  std::function<Scalar(Scalar)> second_derivative;
  std::vector<Scalar> breakpoints;
  bool singular_left = false;
  bool singular_right = false;
  int polynomial_degree = -1;  // >= 0 when the function is a polynomial

  Scalar operator()(Scalar t) const { return value(t); }
  bool has_derivative() const { return static_cast<bool>(derivative); }
  bool has_second_derivative() const { return static_cast<bool>(second_derivative); }
};

/// Central-difference check of the derivative at random interior points.
/// Returns the largest relative discrepancy observed.
template <typename Scalar>
Scalar derivative_consistency(const TestFunction<Scalar>& f, int samples = 32, unsigned seed = 1) {
  if (!f.has_derivative()) throw std::invalid_argument("derivative_consistency: no derivative for " + f.label);
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(0.05, 0.95);
  const Scalar h = std::cbrt(std::numeric_limits<Scalar>::epsilon());
  Scalar worst(0);
  for (int s = 0; s < samples; ++s) {
    const Scalar t = Scalar(dist(gen));
    bool near_break = false;
    for (Scalar b : f.breakpoints) near_break = near_break || std::abs(t - b) < 4 * h;
    if (near_break) continue;
    const Scalar fd = (f.value(t + h) - f.value(t - h)) / (2 * h);
    const Scalar d = f.derivative(t);
    worst = std::max(worst, std::abs(fd - d) / std::max(Scalar(1), std::abs(d)));
  }
  return worst;
}

/// sum_k c_k t^k with c given lowest degree first. Horner evaluation.
template <typename Scalar>
TestFunction<Scalar> polynomial(std::vector<Scalar> c, std::string label = "polynomial") {
  while (c.size() > 1 && c.back() == Scalar(0)) c.pop_back();
  if (c.empty()) c.push_back(Scalar(0));
  auto horner = [](const std::vector<Scalar>& a, Scalar t) {
    Scalar s(0);
    for (auto it = a.rbegin(); it != a.rend(); ++it) s = s * t + *it;
    return s;
  };
  auto diff = [](const std::vector<Scalar>& a) {
    std::vector<Scalar> d;
    for (std::size_t k = 1; k < a.size(); ++k) d.push_back(Scalar(k) * a[k]);
    if (d.empty()) d.push_back(Scalar(0));
    return d;
  };
  const std::vector<Scalar> d1 = diff(c), d2 = diff(d1);
  TestFunction<Scalar> f;
  f.label = std::move(label);
  f.value = [c, horner](Scalar t) { return horner(c, t); };
  f.derivative = [d1, horner](Scalar t) { return horner(d1, t); };
  f.second_derivative = [d2, horner](Scalar t) { return horner(d2, t); };
  f.polynomial_degree = static_cast<int>(c.size()) - 1;
  return f;
}

template <typename Scalar>
TestFunction<Scalar> constant_function(Scalar c) {
  auto f = polynomial<Scalar>({c}, "constant");
  return f;
}

/// sqrt(i) t^i, the unit-norm-moment witness family.
template <typename Scalar>
TestFunction<Scalar> scaled_monomial(int i) {
  std::vector<Scalar> c(static_cast<std::size_t>(i) + 1, Scalar(0));
  c.back() = std::sqrt(Scalar(i));
  return polynomial<Scalar>(std::move(c), "sqrt(" + std::to_string(i) + ")*t^" + std::to_string(i));
}

/// |t - 1/2|: in H1 but not H2.
template <typename Scalar>
TestFunction<Scalar> abs_kink() {
  TestFunction<Scalar> f;
  f.label = "|t-1/2|";
  f.value = [](Scalar t) { return std::abs(t - Scalar(0.5)); };
  f.derivative = [](Scalar t) { return t < Scalar(0.5) ? Scalar(-1) : Scalar(1); };
  f.breakpoints = {Scalar(0.5)};
  return f;
}

/// t^3 e^t.
template <typename Scalar>
TestFunction<Scalar> cubic_exp() {
  TestFunction<Scalar> f;
  f.label = "t^3*exp(t)";
  f.value = [](Scalar t) { return t * t * t * std::exp(t); };
  f.derivative = [](Scalar t) { return (3 * t * t + t * t * t) * std::exp(t); };
  f.second_derivative = [](Scalar t) { return (6 * t + 6 * t * t + t * t * t) * std::exp(t); };
  return f;
}

/// 0.2 + 0.36 / (1 + 100 (2.05 t - 0.2)^2): smooth, sharply peaked near t = 0.0976.
template <typename Scalar>
TestFunction<Scalar> peaked_profile() {
  TestFunction<Scalar> f;
  f.label = "peaked_profile";
  const Scalar a(2.05), s(0.2), k(100), amp(0.36), base(0.2);
  f.value = [=](Scalar t) {
    const Scalar u = a * t - s;
    return base + amp / (1 + k * u * u);
  };
  f.derivative = [=](Scalar t) {
    const Scalar u = a * t - s, q = 1 + k * u * u;
    return -amp * 2 * k * u * a / (q * q);
  };
  f.second_derivative = [=](Scalar t) {
    const Scalar u = a * t - s, q = 1 + k * u * u;
    return -amp * 2 * k * a * a * (1 - 3 * k * u * u) / (q * q * q);
  };
  // split around the peak so panels resolve its width 1/(10 a)
  f.breakpoints = {Scalar(0.05), Scalar(0.0976), Scalar(0.15), Scalar(0.3)};
  return f;
}

/// (1 - t)^alpha for alpha in (-1/2, 0): in L2, unbounded at t = 1.
template <typename Scalar>
TestFunction<Scalar> power_singular(Scalar alpha) {
  if (!(alpha > Scalar(-0.5) && alpha < 0)) throw std::domain_error("power_singular: alpha outside (-1/2, 0)");
  TestFunction<Scalar> f;
  f.label = "(1-t)^" + std::to_string(static_cast<double>(alpha));
  f.value = [alpha](Scalar t) { return std::pow(Scalar(1) - t, alpha); };
  f.derivative = [alpha](Scalar t) { return -alpha * std::pow(Scalar(1) - t, alpha - 1); };
  f.singular_right = true;
  return f;
}

template <typename Scalar>
TestFunction<Scalar> linear_combination(Scalar a, const TestFunction<Scalar>& f, Scalar b, const TestFunction<Scalar>& g) {
  TestFunction<Scalar> h;
  h.label = "combination";
  h.value = [=](Scalar t) { return a * f.value(t) + b * g.value(t); };
  if (f.has_derivative() && g.has_derivative())
    h.derivative = [=](Scalar t) { return a * f.derivative(t) + b * g.derivative(t); };
  if (f.has_second_derivative() && g.has_second_derivative())
    h.second_derivative = [=](Scalar t) { return a * f.second_derivative(t) + b * g.second_derivative(t); };
  h.breakpoints = f.breakpoints;
  h.breakpoints.insert(h.breakpoints.end(), g.breakpoints.begin(), g.breakpoints.end());
  h.singular_left = f.singular_left || g.singular_left;
  h.singular_right = f.singular_right || g.singular_right;
  if (f.polynomial_degree >= 0 && g.polynomial_degree >= 0)
    h.polynomial_degree = std::max(f.polynomial_degree, g.polynomial_degree);
  return h;
}

/// Parses expressions like "3t^2-1", "-2.5*t^3 + t", "x^4" into coefficients
/// (lowest degree first). Accepts 't' or 'x' as the variable.
std::vector<double> parse_polynomial(const std::string& text);

}  // namespace hmp
