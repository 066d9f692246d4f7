#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ptw/coherent.hpp"
#include "ptw/fractional_time.hpp"
#include "ptw/tile.hpp"
#include "ptw/wigner.hpp"

namespace ptw {

struct ScalingPoint {
  double beta;
  double action;  // A = Δx·Δp
  double area;    // tile area a
};

struct ScalingFit {
  std::vector<ScalingPoint> points;
  double slope;      // of ln a against ln A
  double intercept;
  double r_squared;
};

/// Ordinary least squares of ln a on ln A. PreconditionError for fewer than
/// 3 points or non-positive values.
ScalingFit fit_scaling(std::vector<ScalingPoint> points);

/// For each β: CS, evolve to frac, classical_action, measure_state_tile; then
/// fit_scaling. Points come back sorted by β.
ScalingFit scaling_sweep(const PTParams& params, std::span<const double> betas, FractionalTime frac);

/// Σ a_n* b_n, zero-padding the shorter vector. MismatchError for different params.
cplx overlap_coeff(const CoefficientState& a, const CoefficientState& b);

/// 2π ∫∫ W_a W_b dx dp (trapezoid). MismatchError for different grids.
double overlap_wigner(const WignerField& a, const WignerField& b);

/// ∫ χ_a* χ_b dx over the common well, for states of different potentials
/// sharing α. MismatchError if the wells differ.
cplx overlap_position(const CoefficientState& a, const CoefficientState& b, int samples = 8192);

/// β > 0 that puts the CS occupation peak at `nbar`: the geometric mean of
/// the two neighbouring ratio conditions |c_{n̄}/c_{n̄−1}| = |c_{n̄}/c_{n̄+1}| = 1.
double beta_for_peak(const PTParams& params, int nbar);

struct AsymmetryReport {
  PTParams sym;
  PTParams asym;
  double beta_sym;
  double beta_asym;
  double overlap_wigner;     // 2π∫∫W_sym W_asym
  double overlap_magnitude;  // |⟨sym|asym⟩| from position space
  std::vector<double> section_x;
  std::vector<double> section_sym;   // W_sym(x, 0)
  std::vector<double> section_asym;  // W_asym(x, 0)
  /// Lag τ minimizing Σ (W_sym(x) − W_asym(x + τ))² over the central window.
  double shift;
  /// Offset from the central extremum of W_sym(x, 0) to the nearest
  /// opposite-sign extremum of W_asym(x, 0); empty when none exists in the window.
  std::optional<double> extremum_shift;
  double tile_dx_span;  // of the symmetric compass tile
};

/// Both states prepared as CS and evolved to T_rev/8 of their own potential.
/// MismatchError unless α agrees.
AsymmetryReport asymmetry_experiment(const PTParams& sym, const PTParams& asym, double beta_sym, double beta_asym,
                                     int grid_size = kDefaultGridSize);

}  // namespace ptw
