#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "ptw/params.hpp"

namespace ptw {

/// V(x) inside the open well (0, π/(2α)); DomainError at or beyond the walls.
double potential_value(const PTParams& params, double x);

/// E_n = (α²/2)(2n + ρ + κ)².
double energy(const PTParams& params, int n);

/// log N_n with N_n² = 2α n! (2n+ρ+κ) Γ(n+ρ+κ) / (Γ(n+ρ+½) Γ(n+κ+½)).
double log_normalization(const PTParams& params, int n);

/// Largest log-magnitude an intermediate eigenfunction value may reach before
/// evaluation reports NumericRangeError.
inline constexpr double kMaxLogMagnitude = 700.0;

/// Energy eigenbasis ψ_0 .. ψ_{n_max} of one well, evaluated on demand.
///
///   ψ_n(x) = N_n cos^ρ(αx) sin^κ(αx) P_n^{(κ−½, ρ−½)}(cos 2αx)
///
/// Values come from the three-term recurrence of the orthonormal polynomials
/// N_n P_n with running rescaling, so neither the gamma ratios in N_n nor the
/// polynomial values ever overflow. The object is immutable after construction.
class EigenBasis {
 public:
  /// `max_log_magnitude` bounds log|ψ_n| at any step; beyond it evaluation
  /// raises NumericRangeError instead of producing a non-finite value.
  EigenBasis(const PTParams& params, int n_max, double max_log_magnitude = kMaxLogMagnitude);

  const PTParams& params() const noexcept { return params_; }
  int n_max() const noexcept { return n_max_; }
  int size() const noexcept { return n_max_ + 1; }

  /// Writes ψ_0(x) .. ψ_{n_max}(x) into `out` (length size()). Zero outside
  /// the closed well and at the walls.
  void evaluate(double x, std::span<double> out) const;

  /// Same as evaluate() and additionally writes dψ_n/dx, taken analytically
  /// through the Jacobi derivative identity.
  void evaluate_with_derivative(double x, std::span<double> values, std::span<double> derivatives) const;

  /// Rows are levels, columns are sample points.
  Eigen::MatrixXd table(std::span<const double> xs) const;
  Eigen::MatrixXd derivative_table(std::span<const double> xs) const;

 private:
  template <bool WithDerivative>
  void run(double x, std::span<double> values, std::span<double> derivatives) const;

  PTParams params_;
  int n_max_;
  double max_log_;
  double a_;  // κ − ½
  double b_;  // ρ − ½
  double log_n0_;
  // q_{n+1} = (lin_[n] y + off_[n]) q_n − back_[n] q_{n−1}, q_n = N_n P_n.
  std::vector<double> lin_;
  std::vector<double> off_;
  std::vector<double> back_;
  // For the derivative identity: (2n+a+b)(1−y²)P_n' = n((a−b) − (2n+a+b)y) P_n + 2(n+a)(n+b) P_{n−1}.
  std::vector<double> ratio_prev_;  // N_n / N_{n−1}
};

/// ψ_n(x) for a single level; same conventions as EigenBasis.
double eigenfunction(const PTParams& params, int n, double x);

}  // namespace ptw
