#pragma once

#include <complex>
#include <span>
#include <vector>

#include "ptw/fractional_time.hpp"
#include "ptw/params.hpp"

namespace ptw {

using cplx = std::complex<double>;

inline constexpr double kDefaultTailTol = 1e-12;
inline constexpr int kDefaultHardCap = 4096;

/// Amplitudes c_0 .. c_{n_max} over the eigenbasis of one well.
class CoefficientState {
 public:
  /// Takes the amplitudes as given; PreconditionError if empty or non-finite.
  CoefficientState(const PTParams& params, std::vector<cplx> coeffs);

  const PTParams& params() const noexcept { return params_; }
  const std::vector<cplx>& coeffs() const noexcept { return coeffs_; }
  int n_max() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  int size() const noexcept { return static_cast<int>(coeffs_.size()); }
  cplx operator[](int n) const { return n < size() ? coeffs_[n] : cplx{}; }

  double norm() const;
  CoefficientState normalized() const;
  /// Copy padded with zeros (or truncated) to n_max + 1 amplitudes.
  CoefficientState resized(int n_max) const;

  /// Σ|c_n|² E_n and Σ|c_n|² E_n².
  double mean_energy() const;
  double mean_energy_squared() const;

 private:
  PTParams params_;
  std::vector<cplx> coeffs_;
};

/// |n⟩ padded to n_max + 1 amplitudes (n_max defaults to n).
CoefficientState basis_state(const PTParams& params, int n, int n_max = -1);

/// CS amplitudes d_n ∝ (−β)^n / N_n, truncated where the relative tail mass
/// drops below tail_tol and renormalized. ConvergenceError past hard_cap.
CoefficientState coherent_coefficients(const PTParams& params, cplx beta, double tail_tol = kDefaultTailTol,
                                       int hard_cap = kDefaultHardCap);

/// Same amplitudes with an explicit truncation index.
CoefficientState coherent_coefficients_truncated(const PTParams& params, cplx beta, int n_max);

/// c_n ↦ c_n e^{−iE_n t}.
CoefficientState evolve(const CoefficientState& state, double t);

/// Evolution to (r/s)·T_rev. For integer ρ+κ the phases are reduced exactly
/// in integer arithmetic, so the fractional-revival identities hold to rounding.
CoefficientState evolve(const CoefficientState& state, FractionalTime frac);

/// c_n ↦ (−1)^n c_n, i.e. χ(x) ↦ χ(π/(2α) − x) for ρ = κ.
CoefficientState reflect(const CoefficientState& state);

/// χ(x) = Σ c_n ψ_n(x). DomainError for samples outside the well.
std::vector<cplx> position_wavefunction(const CoefficientState& state, std::span<const double> xs);

/// Largest n with |c_n|² > threshold (0 if none).
int occupied_top(const CoefficientState& state, double threshold = 1e-8);

/// Index of the largest |c_n|².
int peak_level(const CoefficientState& state);

}  // namespace ptw
