#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

#include "ptw/coherent.hpp"
#include "ptw/grid.hpp"

namespace ptw {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// W(x_i, p_j) on a grid, row-major with x outer.
class WignerField {
 public:
  /// MismatchError if the matrix shape differs from the grid.
  WignerField(PhaseSpaceGrid grid, RowMatrix values, double imag_residue = 0.0);

  const PhaseSpaceGrid& grid() const noexcept { return grid_; }
  const RowMatrix& values() const noexcept { return values_; }
  double operator()(int i, int j) const { return values_(i, j); }
  /// Largest |Im| of the transform before it was discarded.
  double imag_residue() const noexcept { return imag_residue_; }

  double integral() const;
  double min_value() const { return values_.minCoeff(); }

 private:
  PhaseSpaceGrid grid_;
  RowMatrix values_;
  double imag_residue_;
};

struct WignerOptions {
  /// Upper bound on scratch memory; ResolutionError when the sampling rule needs more.
  std::size_t memory_cap_bytes = std::size_t{1} << 30;
};

/// Largest z step that keeps 8 samples per wavelength of e^{−2ipz} at the
/// grid's |p|max and resolves the correlation product itself.
double z_step_limit(const CoefficientState& state, const PhaseSpaceGrid& grid);

/// Composite Simpson quadrature of the defining integral for every (x, p)
/// node. Slow; the reference for wigner_fast.
WignerField wigner_direct(const CoefficientState& state, const PhaseSpaceGrid& grid,
                          const WignerOptions& options = {});

/// Same integral per row as a chirp-z transform of the correlation product
/// sampled on an x-aligned fine grid.
WignerField wigner_fast(const CoefficientState& state, const PhaseSpaceGrid& grid,
                        const WignerOptions& options = {});

/// W(x, p) at fixed p for each x, by the direct quadrature.
std::vector<double> wigner_section(const CoefficientState& state, std::span<const double> xs, double p);

struct Marginals {
  std::vector<double> x_density;  // ∫ W dp at each x_i
  std::vector<double> p_density;  // ∫ W dx at each p_j
};

Marginals marginals(const WignerField& field);

struct PhaseSpaceMoments {
  double mean_x;
  double mean_p;
  double var_x;
  double var_p;
};

PhaseSpaceMoments moments(const WignerField& field);

/// Trapezoid weights for n equally spaced samples with step h.
std::vector<double> trapezoid_weights(int n, double h);

}  // namespace ptw
