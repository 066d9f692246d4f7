#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "ptw/coherent.hpp"

namespace ptw {

/// λ = |λ| e^{iθ} for the displacement exp(λK₊ − λ*K₋).
struct DisplacementParam {
  double magnitude = 0.0;
  double theta = 0.0;

  /// |λ| from Re λ at fixed θ; DomainError when cos θ = 0 or the result is negative.
  static DisplacementParam from_real_part(double re_lambda, double theta);

  cplx lambda() const { return std::polar(magnitude, theta); }
  /// β' = tanh|λ| e^{iθ}.
  cplx beta_prime() const;
  /// η_d = −2 ln cosh|λ|.
  double eta_d() const;
};

/// Dense truncations of the SU(1,1) generators with Bargmann index k = (ρ+κ)/2:
///   K₊|n⟩ = √((n+1)(n+2k)) |n+1⟩,  K₋|n⟩ = √(n(n+2k−1)) |n−1⟩,  K₀|n⟩ = (n+k)|n⟩.
struct Su11Generators {
  double k;
  Eigen::MatrixXd k_plus;
  Eigen::MatrixXd k_minus;
  Eigen::MatrixXd k_zero;
};

Su11Generators su11_generators(const PTParams& params, int n_max);

struct CommutationResiduals {
  double k0_kplus;    // ‖[K₀,K₊] − K₊‖
  double k0_kminus;   // ‖[K₀,K₋] + K₋‖
  double kplus_kminus;  // ‖[K₊,K₋] + 2K₀‖
};

/// Max-abs residuals over the interior block (the top two levels excluded).
CommutationResiduals commutation_residuals(const Su11Generators& gen);

inline constexpr double kDefaultLeakageTol = 1e-8;

/// exp(|λ|(e^{iθ}K₊ − e^{−iθ}K₋)) on a fixed truncated basis, diagonalized once
/// so that any magnitude at this θ costs two dense matrix-vector products.
class Displacer {
 public:
  Displacer(const PTParams& params, double theta, int basis_size);

  int basis_size() const noexcept { return static_cast<int>(values_.size()); }
  double theta() const noexcept { return theta_; }

  /// Amplitudes on the full basis. PreconditionError if the state does not fit.
  std::vector<cplx> apply(const CoefficientState& state, double magnitude) const;

  /// Mass in the top guard band of the basis; the truncated exponential is
  /// unitary, so population reaching the band is what the cut would lose.
  double leakage(const std::vector<cplx>& amplitudes) const;

 private:
  PTParams params_;
  double theta_;
  Eigen::VectorXd values_;   // spectrum of the real symmetric tridiagonal form
  Eigen::MatrixXd vectors_;  // its eigenvectors
};

struct DisplacementOptions {
  double leakage_tol = kDefaultLeakageTol;
  int hard_cap = kDefaultHardCap;
};

struct DisplacementResult {
  CoefficientState state;  // renormalized
  double leakage;
  int basis_size;
};

/// Enlarges the basis until the leakage is below tolerance; ConvergenceError at the cap.
DisplacementResult displace_oracle(const CoefficientState& state, const DisplacementParam& d,
                                   const DisplacementOptions& options = {});

/// ⟨χ(t)| D(λ) |χ(t)⟩ with χ(t) = evolve(state, t), by the oracle.
cplx overlap_oracle(const CoefficientState& state, const DisplacementParam& d, double t,
                    const DisplacementOptions& options = {});

struct AnalyticOptions {
  double shell_tol = 1e-14;
  int shell_cap = 4000;
};

/// Same overlap from the disentangled normal form
///   D = exp(ζK₊) exp(η_d K₀) exp(−ζ*K₋),  ζ = tanh|λ| e^{iθ},
/// summed over n, m (lowering steps) and p (raising steps) in (m+p) shells until a
/// shell's absolute contribution falls below shell_tol. ConvergenceError at the cap.
cplx overlap_analytic(const PTParams& params, cplx beta, const DisplacementParam& d, double t,
                      const AnalyticOptions& options = {});

/// The closed-form triple sum as printed with the overlap result, transcribed term by
/// term and divided by its value at λ = 0. Kept for the discrepancy report only.
/// PreconditionError unless ρ = κ.
cplx overlap_printed(const PTParams& params, cplx beta, const DisplacementParam& d, double t);

struct OverlapCurve {
  std::vector<double> lambda_samples;  // Re λ
  std::vector<double> overlaps;        // |⟨χ(t)|D|χ(t)⟩|
  std::vector<double> minima;          // Re λ of interior minima (parabolic refinement)
  std::vector<double> maxima;          // Re λ of interior maxima
  std::vector<double> maxima_values;
  std::optional<double> period;        // spacing of the first two minima
  bool envelope_decays = false;        // interior maxima strictly decreasing
  double max_leakage = 0.0;
  int basis_size = 0;
};

/// Oracle overlap on n_samples points of Re λ ∈ [0, lambda_max] at fixed θ.
/// DomainError for n_samples < 50. The period stays empty when fewer than two
/// minima exist in range.
OverlapCurve overlap_sweep(const PTParams& params, cplx beta, double theta, double lambda_max, int n_samples,
                           double t, const DisplacementOptions& options = {});

}  // namespace ptw
