#pragma once

// Independent reference implementations used only by the tests.

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/jacobi.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "ptw/params.hpp"

namespace ptw::oracle {

/// ψ_n(x) with the Jacobi polynomial from Boost and the normalization from
/// std::lgamma; shares no code with the library recurrence.
inline double psi(const PTParams& p, int n, double x) {
  const double a = p.alpha();
  const double c = std::cos(a * x);
  const double s = std::sin(a * x);
  if (!(c > 0.0) || !(s > 0.0)) return 0.0;
  const double r = p.rho();
  const double k = p.kappa();
  const double log_norm = 0.5 * (std::log(2.0 * a) + std::lgamma(n + 1.0) + std::log(2.0 * n + r + k) +
                                 std::lgamma(n + r + k) - std::lgamma(n + r + 0.5) - std::lgamma(n + k + 0.5));
  const double poly = boost::math::jacobi(static_cast<unsigned>(n), k - 0.5, r - 0.5, std::cos(2.0 * a * x));
  return std::exp(log_norm + r * std::log(c) + k * std::log(s)) * poly;
}

/// Composite 20-point Gauss-Legendre rule on [lo, hi] with `panels` panels.
template <typename F>
double integrate(F&& f, double lo, double hi, int panels) {
  const double h = (hi - lo) / panels;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double a = lo + i * h;
    total += boost::math::quadrature::gauss<double, 20>::integrate(f, a, a + h);
  }
  return total;
}

}  // namespace ptw::oracle
