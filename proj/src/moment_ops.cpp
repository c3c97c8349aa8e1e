#include "hmp/moment_ops.hpp"

#include <boost/math/special_functions/trigamma.hpp>
#include <Eigen/Dense>

namespace hmp {

double monomial_moment_norm_sq(int i, int J) {
  if (i < 1 || J < 0) throw std::invalid_argument("monomial_moment_norm_sq: need i >= 1, J >= 0");
  double s = 0, c = 0;
  for (int j = J; j >= 1; --j) {  // smallest terms first
    const double d = static_cast<double>(i + j);
    const double term = static_cast<double>(i) / (d * d);
    const double t = s + term;
    c += (std::abs(s) >= std::abs(term)) ? (s - t) + term : (term - t) + s;
    s = t;
  }
  const double tail = static_cast<double>(i) * boost::math::trigamma(static_cast<double>(i + J + 1));
  return s + c + tail;
}

BigFloat pseudoinverse_norm(Index n, const PowerIterationOptions& opts) {
  BigFloat::PrecisionScope scope(opts.precision_bits);
  return sqrt(spectral_norm(inverse_hilbert(n), opts).value);
}

GrowthFit fit_pseudoinverse_growth(const std::vector<Index>& n_list, const PowerIterationOptions& opts) {
  if (n_list.size() < 2) throw std::invalid_argument("fit_pseudoinverse_growth: need at least two sizes");
  const auto k = static_cast<Index>(n_list.size());
  Eigen::MatrixXd X(k, 2);
  Eigen::VectorXd y(k);
  GrowthFit fit;
  fit.ln_C_hat = -std::numeric_limits<double>::infinity();
  for (Index r = 0; r < k; ++r) {
    const Index n = n_list[static_cast<std::size_t>(r)];
    const double ln_norm = log(pseudoinverse_norm(n, opts)).to_double();
    X(r, 0) = 1.0;
    X(r, 1) = static_cast<double>(n);
    y(r) = ln_norm;
    fit.ln_C_hat = std::max(fit.ln_C_hat, 2.0 * (ln_norm - kGrowthRate * static_cast<double>(n)));
  }
  const Eigen::Vector2d coef = X.colPivHouseholderQr().solve(y);
  fit.intercept = coef(0);
  fit.slope = coef(1);
  return fit;
}

}  // namespace hmp
