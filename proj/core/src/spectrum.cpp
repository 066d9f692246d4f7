#include "ptw/spectrum.hpp"

#include <cmath>
#include <sstream>

#include "ptw/error.hpp"

namespace ptw {

namespace {

void check_level(int n) {
  if (n < 0) {
    throw DomainError("level index must be non-negative");
  }
}

// Keeps |q| inside this band while recurring; the removed factor is folded into a log offset.
constexpr double kRescaleHigh = 1e120;
constexpr double kRescaleLow = 1e-120;

}  // namespace

double potential_value(const PTParams& params, double x) {
  if (!(x > 0.0) || !(x < params.well_width())) {
    std::ostringstream os;
    os << "potential is singular or undefined at x=" << x << " (open interval (0, " << params.well_width()
       << "))";
    throw DomainError(os.str());
  }
  const double a = params.alpha();
  const double c = std::cos(a * x);
  const double s = std::sin(a * x);
  const double rho = params.rho();
  const double kap = params.kappa();
  return 0.5 * a * a * (rho * (rho - 1.0) / (c * c) + kap * (kap - 1.0) / (s * s));
}

double energy(const PTParams& params, int n) {
  check_level(n);
  const double q = 2.0 * n + params.eta();
  return 0.5 * params.alpha() * params.alpha() * q * q;
}

double log_normalization(const PTParams& params, int n) {
  check_level(n);
  const double rho = params.rho();
  const double kap = params.kappa();
  const double dn = n;
  return 0.5 * (std::log(2.0 * params.alpha()) + std::lgamma(dn + 1.0) + std::log(2.0 * dn + rho + kap) +
                std::lgamma(dn + rho + kap) - std::lgamma(dn + rho + 0.5) - std::lgamma(dn + kap + 0.5));
}

EigenBasis::EigenBasis(const PTParams& params, int n_max, double max_log_magnitude)
    : params_(params), n_max_(n_max), max_log_(max_log_magnitude), a_(params.kappa() - 0.5), b_(params.rho() - 0.5) {
  if (n_max < 0) {
    throw DomainError("n_max must be non-negative");
  }
  log_n0_ = log_normalization(params, 0);
  lin_.resize(n_max_ + 1);
  off_.resize(n_max_ + 1);
  back_.resize(n_max_ + 1);
  ratio_prev_.resize(n_max_ + 1);

  std::vector<double> log_n(n_max_ + 2);
  for (int n = 0; n <= n_max_ + 1; ++n) {
    log_n[n] = log_normalization(params, n);
  }
  const double a = a_;
  const double b = b_;
  for (int n = 0; n <= n_max_; ++n) {
    const double s = 2.0 * n + a + b;
    const double d = 2.0 * (n + 1) * (n + a + b + 1.0) * s;
    const double alpha_n = (s + 1.0) * (s + 2.0) * s / d;
    const double beta_n = (s + 1.0) * (a * a - b * b) / d;
    const double gamma_n = 2.0 * (n + a) * (n + b) * (s + 2.0) / d;
    const double up = std::exp(log_n[n + 1] - log_n[n]);
    lin_[n] = up * alpha_n;
    off_[n] = up * beta_n;
    back_[n] = n == 0 ? 0.0 : std::exp(log_n[n + 1] - log_n[n - 1]) * gamma_n;
    ratio_prev_[n] = n == 0 ? 0.0 : std::exp(log_n[n] - log_n[n - 1]);
  }
}

template <bool WithDerivative>
void EigenBasis::run(double x, std::span<double> values, std::span<double> derivatives) const {
  const int count = size();
  const double alpha = params_.alpha();
  const double c = std::cos(alpha * x);
  const double s = std::sin(alpha * x);
  if (!(x > 0.0) || !(x < params_.well_width()) || !(c > 0.0) || !(s > 0.0)) {
    for (int n = 0; n < count; ++n) {
      values[n] = 0.0;
      if constexpr (WithDerivative) derivatives[n] = 0.0;
    }
    return;
  }
  const double y = std::cos(2.0 * alpha * x);
  const double rho = params_.rho();
  const double kap = params_.kappa();

  // ψ_n = exp(log_offset) * q_n with q_0 = 1.
  double log_offset = rho * std::log(c) + kap * std::log(s) + log_n0_;
  double factor = std::exp(log_offset);
  double q_prev = 0.0;
  double q = 1.0;

  // d/dx of the prefactor relative to itself, and 1/sin(2αx) for the polynomial part.
  const double envelope_slope = alpha * (kap * c / s - rho * s / c);
  const double inv_sin2 = 1.0 / (2.0 * s * c);
  const double a = a_;
  const double b = b_;

  for (int n = 0; n < count; ++n) {
    if (std::abs(q) > 0.0 && std::log(std::abs(q)) + log_offset > max_log_) {
      std::ostringstream os;
      os << "eigenfunction value out of range at n=" << n << ", x=" << x;
      throw NumericRangeError(os.str());
    }
    values[n] = factor * q;
    if constexpr (WithDerivative) {
      double poly_term = 0.0;
      if (n > 0) {
        // q_{n-1} in the same scale is q_prev; P_{n-1} = q_{n-1}/N_{n-1}, P_n = q_n/N_n.
        // Multiply through by N_n: 2(n+a)(n+b) N_n P_{n-1} = 2(n+a)(n+b) ratio_prev * q_prev.
        const double sn = 2.0 * n + a + b;
        const double r = (n * ((a - b) - sn * y) * q + 2.0 * (n + a) * (n + b) * ratio_prev_[n] * q_prev) / sn;
        // −2α sin(2αx) P_n'  =  −2α r / sin(2αx)
        poly_term = -2.0 * alpha * r * inv_sin2;
      }
      derivatives[n] = factor * (envelope_slope * q + poly_term);
    }
    if (n + 1 == count) break;
    const double next = (lin_[n] * y + off_[n]) * q - back_[n] * q_prev;
    q_prev = q;
    q = next;
    const double mag = std::abs(q);
    if (mag > kRescaleHigh || (mag > 0.0 && mag < kRescaleLow)) {
      const double shift = std::log(mag);
      q /= mag;
      q_prev /= mag;
      log_offset += shift;
      factor = std::exp(log_offset);
    }
  }
}

void EigenBasis::evaluate(double x, std::span<double> out) const {
  if (static_cast<int>(out.size()) < size()) {
    throw PreconditionError("output span shorter than basis size");
  }
  run<false>(x, out, {});
}

void EigenBasis::evaluate_with_derivative(double x, std::span<double> values,
                                          std::span<double> derivatives) const {
  if (static_cast<int>(values.size()) < size() || static_cast<int>(derivatives.size()) < size()) {
    throw PreconditionError("output span shorter than basis size");
  }
  run<true>(x, values, derivatives);
}

Eigen::MatrixXd EigenBasis::table(std::span<const double> xs) const {
  Eigen::MatrixXd out(size(), static_cast<Eigen::Index>(xs.size()));
  std::vector<double> buf(size());
  for (std::size_t j = 0; j < xs.size(); ++j) {
    evaluate(xs[j], buf);
    for (int n = 0; n < size(); ++n) out(n, static_cast<Eigen::Index>(j)) = buf[n];
  }
  return out;
}

Eigen::MatrixXd EigenBasis::derivative_table(std::span<const double> xs) const {
  Eigen::MatrixXd out(size(), static_cast<Eigen::Index>(xs.size()));
  std::vector<double> v(size());
  std::vector<double> d(size());
  for (std::size_t j = 0; j < xs.size(); ++j) {
    evaluate_with_derivative(xs[j], v, d);
    for (int n = 0; n < size(); ++n) out(n, static_cast<Eigen::Index>(j)) = d[n];
  }
  return out;
}

double eigenfunction(const PTParams& params, int n, double x) {
  check_level(n);
  if (x < 0.0 || x > params.well_width()) {
    throw DomainError("eigenfunction evaluated outside the well");
  }
  EigenBasis basis(params, n);
  std::vector<double> buf(n + 1);
  basis.evaluate(x, buf);
  return buf[n];
}

}  // namespace ptw
