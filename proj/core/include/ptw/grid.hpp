#pragma once

#include "ptw/coherent.hpp"
#include "ptw/params.hpp"

namespace ptw {

inline constexpr int kDefaultGridSize = 512;

/// Rectangular (x, p) sampling. Both axes include their end points.
class PhaseSpaceGrid {
 public:
  /// DomainError unless nx, np ≥ 16, x_max > x_min, p_max > p_min (all finite).
  PhaseSpaceGrid(double x_min, double x_max, int nx, double p_min, double p_max, int np);

  /// x ∈ [0, π/(2α)], p ∈ [−p_max, p_max].
  static PhaseSpaceGrid well(const PTParams& params, int nx, int np, double p_max);

  /// Well grid with p_max from default_p_max(state).
  static PhaseSpaceGrid for_state(const CoefficientState& state, int nx = kDefaultGridSize,
                                  int np = kDefaultGridSize);

  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  double p_min() const noexcept { return p_min_; }
  double p_max() const noexcept { return p_max_; }
  int nx() const noexcept { return nx_; }
  int np() const noexcept { return np_; }
  double dx() const noexcept { return (x_max_ - x_min_) / (nx_ - 1); }
  double dp() const noexcept { return (p_max_ - p_min_) / (np_ - 1); }
  double x(int i) const noexcept { return i == nx_ - 1 ? x_max_ : x_min_ + i * dx(); }
  double p(int j) const noexcept { return j == np_ - 1 ? p_max_ : p_min_ + j * dp(); }

  /// True when the x axis is exactly the well of `params` (to 1e−12 relative).
  bool spans_well(const PTParams& params) const noexcept;

  friend bool operator==(const PhaseSpaceGrid&, const PhaseSpaceGrid&) = default;

 private:
  double x_min_;
  double x_max_;
  int nx_;
  double p_min_;
  double p_max_;
  int np_;
};

/// 1.2·α·(2 n_hi + ρ + κ), n_hi the largest level with |c_n|² > 1e−8.
double default_p_max(const CoefficientState& state);

/// Largest momentum carried by the state's occupied levels, α(2 n_hi + ρ + κ).
double momentum_support(const CoefficientState& state);

}  // namespace ptw
