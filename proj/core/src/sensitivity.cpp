#include "ptw/sensitivity.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ptw/error.hpp"
#include "ptw/spectrum.hpp"

namespace ptw {

namespace {

constexpr int kMinGuard = 16;

int guard_band(int basis_size) { return std::max(kMinGuard, basis_size / 8); }

double parabolic_offset(double a, double b, double c) {
  const double den = a - 2.0 * b + c;
  return den == 0.0 ? 0.0 : 0.5 * (a - c) / den;
}

Displacer displacer_for(const CoefficientState& state, double magnitude, double theta,
                        const DisplacementOptions& options, std::vector<cplx>* out, double* leakage) {
  int size = std::max(2 * state.size(), state.size() + 64);
  while (true) {
    size = std::min(size, options.hard_cap);
    Displacer disp(state.params(), theta, size);
    auto amps = disp.apply(state, magnitude);
    const double leak = disp.leakage(amps);
    if (leak < options.leakage_tol) {
      if (out) *out = std::move(amps);
      if (leakage) *leakage = leak;
      return disp;
    }
    if (size == options.hard_cap) {
      std::ostringstream os;
      os << "displacement leakage " << leak << " exceeds " << options.leakage_tol << " at the basis cap "
         << options.hard_cap;
      throw ConvergenceError(os.str());
    }
    size *= 2;
  }
}

}  // namespace

DisplacementParam DisplacementParam::from_real_part(double re_lambda, double theta) {
  const double c = std::cos(theta);
  if (std::abs(c) < 1e-12) throw DomainError("Re(lambda) does not fix |lambda| when cos(theta) = 0");
  const double mag = re_lambda / c;
  if (!(mag >= 0.0)) throw DomainError("Re(lambda) and cos(theta) must give a non-negative |lambda|");
  return {mag, theta};
}

cplx DisplacementParam::beta_prime() const { return std::polar(std::tanh(magnitude), theta); }

double DisplacementParam::eta_d() const { return -2.0 * std::log(std::cosh(magnitude)); }

Su11Generators su11_generators(const PTParams& params, int n_max) {
  if (n_max < 1) throw DomainError("generator truncation needs n_max >= 1");
  const int size = n_max + 1;
  const double k = params.bargmann_index();
  Su11Generators g{k, Eigen::MatrixXd::Zero(size, size), Eigen::MatrixXd::Zero(size, size),
                   Eigen::MatrixXd::Zero(size, size)};
  for (int n = 0; n < size; ++n) {
    g.k_zero(n, n) = n + k;
    if (n + 1 < size) g.k_plus(n + 1, n) = std::sqrt((n + 1.0) * (n + 2.0 * k));
    if (n > 0) g.k_minus(n - 1, n) = std::sqrt(n * (n + 2.0 * k - 1.0));
  }
  return g;
}

CommutationResiduals commutation_residuals(const Su11Generators& gen) {
  const Eigen::Index inner = gen.k_zero.rows() - 2;
  if (inner < 1) throw PreconditionError("generators too small for an interior block");
  auto block = [inner](const Eigen::MatrixXd& m) { return m.topLeftCorner(inner, inner); };
  const Eigen::MatrixXd& kp = gen.k_plus;
  const Eigen::MatrixXd& km = gen.k_minus;
  const Eigen::MatrixXd& k0 = gen.k_zero;
  const Eigen::MatrixXd c1 = k0 * kp - kp * k0 - kp;
  const Eigen::MatrixXd c2 = k0 * km - km * k0 + km;
  const Eigen::MatrixXd c3 = kp * km - km * kp + 2.0 * k0;
  return {block(c1).cwiseAbs().maxCoeff(), block(c2).cwiseAbs().maxCoeff(), block(c3).cwiseAbs().maxCoeff()};
}

Displacer::Displacer(const PTParams& params, double theta, int basis_size) : params_(params), theta_(theta) {
  if (basis_size < 2) throw DomainError("displacement basis needs at least 2 levels");
  // e^{iθ}K₊ − e^{−iθ}K₋ = U (K₊ − K₋) U†, U = diag(e^{inθ}), and
  // K₊ − K₋ = D (−iS) D†, D = diag(iⁿ), with S real symmetric tridiagonal.
  const double k = params.bargmann_index();
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(basis_size);
  Eigen::VectorXd sub(basis_size - 1);
  for (int n = 0; n + 1 < basis_size; ++n) sub(n) = std::sqrt((n + 1.0) * (n + 2.0 * k));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw ConvergenceError("tridiagonal eigensolver failed");
  values_ = es.eigenvalues();
  vectors_ = es.eigenvectors();
}

std::vector<cplx> Displacer::apply(const CoefficientState& state, double magnitude) const {
  const int size = basis_size();
  if (!(state.params() == params_)) throw MismatchError("state and displacer belong to different potentials");
  if (state.size() > size) throw PreconditionError("state does not fit in the displacement basis");
  // Phase per level for U·D: e^{inθ} iⁿ.
  auto level_phase = [this](int n) { return std::polar(1.0, n * (theta_ + 0.5 * std::numbers::pi)); };
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(size);
  for (int n = 0; n < state.size(); ++n) w(n) = std::conj(level_phase(n)) * state.coeffs()[n];
  Eigen::VectorXcd y = vectors_.transpose().cast<cplx>() * w;
  for (int j = 0; j < size; ++j) y(j) *= std::polar(1.0, -magnitude * values_(j));
  const Eigen::VectorXcd z = vectors_.cast<cplx>() * y;
  std::vector<cplx> out(size);
  for (int n = 0; n < size; ++n) out[n] = level_phase(n) * z(n);
  return out;
}

double Displacer::leakage(const std::vector<cplx>& amplitudes) const {
  const int size = static_cast<int>(amplitudes.size());
  double s = 0.0;
  for (int n = std::max(0, size - guard_band(size)); n < size; ++n) s += std::norm(amplitudes[n]);
  return s;
}

DisplacementResult displace_oracle(const CoefficientState& state, const DisplacementParam& d,
                                   const DisplacementOptions& options) {
  std::vector<cplx> amps;
  double leak = 0.0;
  const Displacer disp = displacer_for(state, d.magnitude, d.theta, options, &amps, &leak);
  return {CoefficientState(state.params(), std::move(amps)).normalized(), leak, disp.basis_size()};
}

cplx overlap_oracle(const CoefficientState& state, const DisplacementParam& d, double t,
                    const DisplacementOptions& options) {
  const auto evolved = evolve(state, t);
  const auto shifted = displace_oracle(evolved, d, options).state;
  cplx s{};
  for (int n = 0; n < evolved.size(); ++n) s += std::conj(evolved.coeffs()[n]) * shifted.coeffs()[n];
  return s;
}

cplx overlap_analytic(const PTParams& params, cplx beta, const DisplacementParam& d, double t,
                      const AnalyticOptions& options) {
  const auto cs = coherent_coefficients(params, beta);
  const int n_top = cs.n_max();
  const double tz = std::tanh(d.magnitude);
  if (tz == 0.0) return cplx(cs.norm() * cs.norm());
  const double k = params.bargmann_index();
  const double eta_d = d.eta_d();
  const double log_tz = std::log(tz);

  // Amplitudes beyond the CS truncation are needed for the raised index n − m + p.
  const int c_size = n_top + options.shell_cap + 1;
  const auto full = coherent_coefficients_truncated(params, beta, c_size - 1);
  // Keep the normalization of the truncated CS so that λ = 0 gives exactly Σ|c_n|² = 1.
  const double scale = 1.0 / full.resized(n_top).norm();
  std::vector<cplx> c(c_size);
  std::vector<double> log_abs_c(c_size);
  for (int j = 0; j < c_size; ++j) {
    c[j] = full.coeffs()[j] * scale * std::polar(1.0, -energy(params, j) * t);
    log_abs_c[j] = std::abs(c[j]) > 0 ? std::log(std::abs(c[j])) : -INFINITY;
  }
  std::vector<double> lf(c_size + 1), lg(c_size + 1);
  for (int j = 0; j <= c_size; ++j) {
    lf[j] = std::lgamma(j + 1.0);
    lg[j] = std::lgamma(j + 2.0 * k);
  }

  cplx total{};
  for (int s = 0; s <= options.shell_cap; ++s) {
    cplx shell{};
    double shell_abs = 0.0;
    for (int m = 0; m <= s; ++m) {
      const int p = s - m;
      const double log_front = s * log_tz - lf[m] - lf[p];
      const cplx phase = std::polar(m % 2 == 0 ? 1.0 : -1.0, (p - m) * d.theta);
      for (int n = m; n <= n_top; ++n) {
        const int low = n - m;
        const int j = low + p;
        if (j >= c_size) break;
        // ⟨j|K₊^p|low⟩⟨low|K₋^m|n⟩ in log form.
        const double log_elem = 0.5 * (lf[n] - lf[low] + lg[n] - lg[low] + lf[j] - lf[low] + lg[j] - lg[low]);
        const double log_mag = log_front + log_elem + eta_d * (low + k) + log_abs_c[j] + log_abs_c[n];
        if (log_mag < -745.0) continue;
        const cplx term = std::exp(log_mag) * phase * (std::conj(c[j]) / std::abs(c[j])) * (c[n] / std::abs(c[n]));
        shell += term;
        shell_abs += std::abs(term);
      }
    }
    total += shell;
    if (s > 0 && shell_abs < options.shell_tol) return total;
  }
  throw ConvergenceError("disentangled overlap did not converge within the shell cap");
}

cplx overlap_printed(const PTParams& params, cplx beta, const DisplacementParam& d, double t) {
  if (!params.is_symmetric()) throw PreconditionError("the printed overlap formula assumes rho = kappa");
  const double rho = params.rho();
  const double b = std::abs(beta);
  if (!(b > 0.0 && b < 1.0)) throw DomainError("printed overlap needs 0 < |beta| < 1");
  const int n_top = coherent_coefficients(params, beta).n_max();
  constexpr int kRaiseCap = 400;

  auto evaluate = [&](const DisplacementParam& dd) {
    const double tz = std::tanh(dd.magnitude);
    const double eta = dd.eta_d();
    const int p_cap = tz == 0.0 ? 0 : kRaiseCap;
    cplx sum{};
    for (int n = 0; n <= n_top; ++n) {
      const int m_cap = tz == 0.0 ? 0 : n;
      for (int m = 0; m <= m_cap; ++m) {
        for (int p = 0; p <= p_cap; ++p) {
          const double g1 = 2 * rho + 2 * n - m + p;
          const double g3 = 2 * rho - m + p + 1;
          const double g8 = 2 * rho + 2 * n - 2 * m + p;
          const double g9 = 2 * rho + n - m + p;
          if (!(g1 > 0 && g3 > 0 && g8 > 0 && g9 > 0)) continue;
          double lg = std::lgamma(g1) + std::lgamma(rho + n + 0.5) + std::lgamma(g3) +
                      2.0 * std::lgamma(rho + n - m + p + 0.5) - std::lgamma(n - m + 1.0) -
                      std::lgamma(rho + n - m + 0.5) - std::lgamma(2 * rho + p + 1) - std::lgamma(g8) -
                      std::lgamma(g9) - std::log(n - m + p + rho) - std::lgamma(m + 1.0) - std::lgamma(p + 1.0) +
                      (2 * n - m + p) * std::log(b) + eta * (n - m + rho / 2 + 0.25);
          if (m + p > 0) lg += (m + p) * std::log(tz);
          const double arg = (2 * n - m + p) * std::arg(beta) + (m + p) * dd.theta -
                             (energy(params, n) - energy(params, n - m + p)) * t;
          sum += std::polar(std::exp(lg), arg) * (m % 2 == 0 ? 1.0 : -1.0);
        }
      }
    }
    return sum;
  };
  return evaluate(d) / evaluate(DisplacementParam{0.0, d.theta});
}

OverlapCurve overlap_sweep(const PTParams& params, cplx beta, double theta, double lambda_max, int n_samples,
                           double t, const DisplacementOptions& options) {
  if (n_samples < 50) throw DomainError("overlap sweep needs at least 50 samples");
  if (!(lambda_max > 0.0)) throw DomainError("lambda_max must be positive");
  const auto evolved = evolve(coherent_coefficients(params, beta), t);
  const auto top = DisplacementParam::from_real_part(lambda_max, theta);
  const Displacer disp = displacer_for(evolved, top.magnitude, theta, options, nullptr, nullptr);

  OverlapCurve curve;
  curve.basis_size = disp.basis_size();
  const double step = lambda_max / (n_samples - 1);
  for (int i = 0; i < n_samples; ++i) {
    const double re = i == n_samples - 1 ? lambda_max : i * step;
    const auto dd = DisplacementParam::from_real_part(re, theta);
    const auto amps = disp.apply(evolved, dd.magnitude);
    const double leak = disp.leakage(amps);
    if (!(leak < options.leakage_tol)) {
      throw ConvergenceError("displacement leakage exceeded tolerance during the sweep");
    }
    curve.max_leakage = std::max(curve.max_leakage, leak);
    cplx s{};
    for (int n = 0; n < evolved.size(); ++n) s += std::conj(evolved.coeffs()[n]) * amps[n];
    curve.lambda_samples.push_back(re);
    curve.overlaps.push_back(std::abs(s));
  }

  const auto& o = curve.overlaps;
  for (int i = 1; i + 1 < n_samples; ++i) {
    const double off = parabolic_offset(o[i - 1], o[i], o[i + 1]);
    if (o[i] < o[i - 1] && o[i] <= o[i + 1]) {
      curve.minima.push_back(curve.lambda_samples[i] + off * step);
    } else if (o[i] > o[i - 1] && o[i] >= o[i + 1]) {
      curve.maxima.push_back(curve.lambda_samples[i] + off * step);
      curve.maxima_values.push_back(o[i] - 0.25 * (o[i - 1] - o[i + 1]) * off);
    }
  }
  if (curve.minima.size() >= 2) curve.period = curve.minima[1] - curve.minima[0];
  curve.envelope_decays = true;
  for (std::size_t i = 1; i < curve.maxima_values.size(); ++i) {
    if (!(curve.maxima_values[i] < curve.maxima_values[i - 1])) curve.envelope_decays = false;
  }
  return curve;
}

}  // namespace ptw
