#pragma once

#include <numbers>

namespace ptw {

/// Parameters of the Pöschl-Teller well
///   V(x) = (α²/2) [ρ(ρ−1)/cos²(αx) + κ(κ−1)/sin²(αx)],  ħ = m = 1,
/// restricted to the single well x ∈ [0, π/(2α)].
class PTParams {
 public:
  /// Validates ρ > 1, κ > 1, α > 0 (all finite); throws DomainError otherwise.
  PTParams(double rho, double kappa, double alpha);

  double rho() const noexcept { return rho_; }
  double kappa() const noexcept { return kappa_; }
  double alpha() const noexcept { return alpha_; }

  /// η = ρ + κ.
  double eta() const noexcept { return rho_ + kappa_; }
  bool eta_is_integer() const noexcept;
  /// η as an integer; PreconditionError when it is not integral.
  long long eta_integer() const;

  double well_width() const noexcept { return std::numbers::pi / (2.0 * alpha_); }
  double well_center() const noexcept { return std::numbers::pi / (4.0 * alpha_); }

  /// T_rev = π/α².
  double revival_time() const noexcept { return std::numbers::pi / (alpha_ * alpha_); }
  /// T_cl = π/((ρ+κ)α²).
  double classical_period() const noexcept { return revival_time() / eta(); }

  bool is_symmetric() const noexcept { return rho_ == kappa_; }

  /// SU(1,1) Bargmann index k = (ρ+κ)/2.
  double bargmann_index() const noexcept { return 0.5 * eta(); }

  friend bool operator==(const PTParams&, const PTParams&) = default;

 private:
  double rho_;
  double kappa_;
  double alpha_;
};

}  // namespace ptw
