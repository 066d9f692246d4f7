#include "ptw/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "ptw/error.hpp"
#include "ptw/spectrum.hpp"

namespace ptw {

CoefficientState::CoefficientState(const PTParams& params, std::vector<cplx> coeffs)
    : params_(params), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) {
    throw PreconditionError("coefficient vector is empty");
  }
  for (const auto& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw PreconditionError("coefficient vector contains non-finite values");
    }
  }
}

double CoefficientState::norm() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::norm(c);
  return std::sqrt(s);
}

CoefficientState CoefficientState::normalized() const {
  const double nrm = norm();
  if (nrm == 0.0) {
    throw PreconditionError("cannot normalize the zero state");
  }
  std::vector<cplx> out(coeffs_);
  for (auto& c : out) c /= nrm;
  return {params_, std::move(out)};
}

CoefficientState CoefficientState::resized(int n_max) const {
  if (n_max < 0) throw DomainError("n_max must be non-negative");
  std::vector<cplx> out(coeffs_);
  out.resize(static_cast<std::size_t>(n_max) + 1, cplx{});
  return {params_, std::move(out)};
}

double CoefficientState::mean_energy() const {
  double s = 0.0;
  for (int n = 0; n < size(); ++n) s += std::norm(coeffs_[n]) * energy(params_, n);
  return s;
}

double CoefficientState::mean_energy_squared() const {
  double s = 0.0;
  for (int n = 0; n < size(); ++n) {
    const double e = energy(params_, n);
    s += std::norm(coeffs_[n]) * e * e;
  }
  return s;
}

CoefficientState basis_state(const PTParams& params, int n, int n_max) {
  if (n < 0) throw DomainError("level index must be non-negative");
  if (n_max < 0) n_max = n;
  if (n_max < n) throw DomainError("n_max smaller than the requested level");
  std::vector<cplx> c(static_cast<std::size_t>(n_max) + 1, cplx{});
  c[n] = 1.0;
  return {params, std::move(c)};
}

namespace {

void check_beta(cplx beta) {
  if (!std::isfinite(beta.real()) || !std::isfinite(beta.imag()) || !(std::abs(beta) < 1.0)) {
    throw DomainError("coherent-state parameter must satisfy |beta| < 1");
  }
}

// log|d_n| up to an n-independent constant, for n = 0..count-1.
std::vector<double> log_magnitudes(const PTParams& params, double abs_beta, int count) {
  std::vector<double> lm(count);
  const double lb = std::log(abs_beta);
  for (int n = 0; n < count; ++n) {
    lm[n] = n * lb - log_normalization(params, n);
  }
  return lm;
}

CoefficientState assemble(const PTParams& params, cplx beta, const std::vector<double>& lm, int n_max) {
  const double peak = *std::max_element(lm.begin(), lm.begin() + n_max + 1);
  const double phase = std::arg(-beta);
  std::vector<cplx> c(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    c[n] = std::polar(std::exp(lm[n] - peak), phase * n);
  }
  return CoefficientState(params, std::move(c)).normalized();
}

}  // namespace

CoefficientState coherent_coefficients(const PTParams& params, cplx beta, double tail_tol, int hard_cap) {
  check_beta(beta);
  if (!(tail_tol > 0.0)) throw DomainError("tail_tol must be positive");
  if (hard_cap < 1) throw DomainError("hard cap must be positive");
  if (beta == cplx{}) return basis_state(params, 0);

  const int count = hard_cap + 1;
  const auto lm = log_magnitudes(params, std::abs(beta), count);
  const double peak = *std::max_element(lm.begin(), lm.end());
  std::vector<double> w(count);
  for (int n = 0; n < count; ++n) w[n] = std::exp(2.0 * (lm[n] - peak));

  // Mass beyond the cap, bounded by a geometric tail with the local ratio.
  const double ratio = std::exp(2.0 * (lm[count - 1] - lm[count - 2]));
  double tail = ratio < 1.0 ? w[count - 1] * ratio / (1.0 - ratio) : INFINITY;
  double total = tail;
  for (int n = count - 1; n >= 0; --n) total += w[n];

  // tail after index n is Σ_{m>n} w_m; scan downward so it accumulates from small terms.
  int n_max = -1;
  for (int n = count - 1; n >= 0; --n) {
    if (!(tail < tail_tol * total)) {
      n_max = n + 1;
      break;
    }
    tail += w[n];
  }
  if (n_max < 0) n_max = 0;
  if (n_max > hard_cap || !std::isfinite(total)) {
    std::ostringstream os;
    os << "coherent-state tail does not fall below " << tail_tol << " within the hard cap " << hard_cap;
    throw ConvergenceError(os.str());
  }
  return assemble(params, beta, lm, n_max);
}

CoefficientState coherent_coefficients_truncated(const PTParams& params, cplx beta, int n_max) {
  check_beta(beta);
  if (n_max < 0) throw DomainError("n_max must be non-negative");
  if (beta == cplx{}) return basis_state(params, 0, n_max);
  const auto lm = log_magnitudes(params, std::abs(beta), n_max + 1);
  return assemble(params, beta, lm, n_max);
}

CoefficientState evolve(const CoefficientState& state, double t) {
  if (!std::isfinite(t)) throw DomainError("evolution time must be finite");
  std::vector<cplx> c(state.coeffs());
  for (int n = 0; n < state.size(); ++n) {
    c[n] *= std::polar(1.0, -energy(state.params(), n) * t);
  }
  return {state.params(), std::move(c)};
}

CoefficientState evolve(const CoefficientState& state, FractionalTime frac) {
  const PTParams& p = state.params();
  if (!p.eta_is_integer()) {
    return evolve(state, frac.time(p));
  }
  // E_n t = π r (2n+η)² / (2s): reduce r (2n+η)² modulo 4s.
  const long long eta = p.eta_integer();
  const long long mod = 4LL * frac.s();
  std::vector<cplx> c(state.coeffs());
  for (int n = 0; n < state.size(); ++n) {
    long long q = (2LL * n + eta) % mod;
    if (q < 0) q += mod;
    const long long k = (frac.r() * ((q * q) % mod)) % mod;
    c[n] *= std::polar(1.0, -std::numbers::pi * static_cast<double>(k) / (2.0 * frac.s()));
  }
  return {p, std::move(c)};
}

CoefficientState reflect(const CoefficientState& state) {
  std::vector<cplx> c(state.coeffs());
  for (std::size_t n = 1; n < c.size(); n += 2) c[n] = -c[n];
  return {state.params(), std::move(c)};
}

std::vector<cplx> position_wavefunction(const CoefficientState& state, std::span<const double> xs) {
  const PTParams& p = state.params();
  const double width = p.well_width();
  for (double x : xs) {
    if (!(x >= 0.0 && x <= width)) {
      std::ostringstream os;
      os << "sample x=" << x << " lies outside the well [0, " << width << "]";
      throw DomainError(os.str());
    }
  }
  EigenBasis basis(p, state.n_max());
  std::vector<double> buf(state.size());
  std::vector<cplx> out(xs.size());
  const auto& c = state.coeffs();
  for (std::size_t j = 0; j < xs.size(); ++j) {
    basis.evaluate(xs[j], buf);
    cplx acc{};
    for (int n = 0; n < state.size(); ++n) acc += c[n] * buf[n];
    out[j] = acc;
  }
  return out;
}

int occupied_top(const CoefficientState& state, double threshold) {
  for (int n = state.n_max(); n >= 0; --n) {
    if (std::norm(state.coeffs()[n]) > threshold) return n;
  }
  return 0;
}

int peak_level(const CoefficientState& state) {
  const auto& c = state.coeffs();
  int best = 0;
  for (int n = 1; n < state.size(); ++n) {
    if (std::norm(c[n]) > std::norm(c[best])) best = n;
  }
  return best;
}

}  // namespace ptw
