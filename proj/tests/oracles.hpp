#pragma once

// Independent brute-force references. Nothing here calls the closed forms
// under test; frozen values were computed separately at 40 digits.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hmp/exact_core.hpp"

namespace oracle {

using hmp::Index;
using hmp::Rational;
using hmp::RationalMatrix;

inline RationalMatrix hilbert(Index n) {
  RationalMatrix h(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) h(i, j) = Rational(1L, static_cast<unsigned long>(i + j + 1));
  return h;
}

/// Gauss-Jordan with exact pivoting on the first non-zero entry.
inline RationalMatrix inverse(RationalMatrix a) {
  const Index n = a.rows();
  RationalMatrix inv = RationalMatrix::Identity(n, n);
  for (Index c = 0; c < n; ++c) {
    Index p = c;
    while (p < n && a(p, c) == Rational(0L)) ++p;
    if (p == n) throw std::domain_error("oracle::inverse: singular");
    a.row(c).swap(a.row(p));
    inv.row(c).swap(inv.row(p));
    const Rational piv = a(c, c);
    a.row(c) /= piv;
    inv.row(c) /= piv;
    for (Index r = 0; r < n; ++r) {
      if (r == c || a(r, c) == Rational(0L)) continue;
      const Rational f = a(r, c);
      a.row(r) -= f * a.row(c);
      inv.row(r) -= f * inv.row(c);
    }
  }
  return inv;
}

/// Forward substitution L X = I for lower-triangular L.
inline RationalMatrix lower_inverse(const RationalMatrix& l) {
  const Index n = l.rows();
  RationalMatrix x = RationalMatrix::Zero(n, n);
  for (Index c = 0; c < n; ++c)
    for (Index r = c; r < n; ++r) {
      Rational s = (r == c) ? Rational(1L) : Rational(0L);
      for (Index k = c; k < r; ++k) s -= l(r, k) * x(k, c);
      x(r, c) = s / l(r, r);
    }
  return x;
}

/// Pascal triangle, independent of the library binomial.
inline std::vector<std::vector<Rational>> pascal(Index rows) {
  std::vector<std::vector<Rational>> p(static_cast<std::size_t>(rows + 1));
  for (Index n = 0; n <= rows; ++n) {
    auto& row = p[static_cast<std::size_t>(n)];
    row.assign(static_cast<std::size_t>(n + 1), Rational(1L));
    for (Index k = 1; k < n; ++k)
      row[static_cast<std::size_t>(k)] =
          p[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k - 1)] + p[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k)];
  }
  return p;
}

/// sqrt(2k+1) P_k(2t-1) from the explicit power sum, exact before the final rounding.
inline long double legendre(int k, long double t) {
  const Rational x(t);
  Rational s(0L), c(1L), xm(1L);  // c = C(k,m) C(k+m,m)
  for (int m = 0; m <= k; ++m) {
    s += (((k + m) % 2) ? -c : c) * xm;
    xm *= x;
    c = c * Rational(static_cast<long>((k - m) * (k + m + 1))) / Rational(static_cast<long>((m + 1) * (m + 1)));
  }
  return std::sqrt(2.0L * k + 1) * s.to_long_double();
}

// Frozen at 40 digits by symmetric eigen-decomposition of the exact inverse.
constexpr double kLambdaMaxHinv2 = 15.211102550927978586;  // 8 + sqrt(52)
constexpr double kLambdaMaxHinv3 = 372.11512782576365222;
constexpr double kLambdaMaxHinv5 = 304142.84167702435612;
constexpr double kLambdaMaxHinv10 = 9147843444095.2879583;
constexpr double kLinv2Norm = 3.9001413501215540670;           // sqrt(8 + sqrt(52))
constexpr double kHardyQuarter = 1.1803405990160962260;        // sqrt(pi)/Gamma(3/4)^2
constexpr double kPointValueErrorN100 = 0.041972785077386301618;  // 1 - (1/100) sum j/(j+1)
constexpr double kCubicExpH2Norm = 15.270656673097344692;         // H^2 norm of t^3 e^t

}  // namespace oracle
