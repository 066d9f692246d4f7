#include "ptw/grid.hpp"

#include <cmath>
#include <sstream>

#include "ptw/error.hpp"

namespace ptw {

PhaseSpaceGrid::PhaseSpaceGrid(double x_min, double x_max, int nx, double p_min, double p_max, int np)
    : x_min_(x_min), x_max_(x_max), nx_(nx), p_min_(p_min), p_max_(p_max), np_(np) {
  if (nx < 16 || np < 16) {
    throw DomainError("grid needs at least 16 samples per axis");
  }
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min)) {
    throw DomainError("grid x range must be finite and increasing");
  }
  if (!std::isfinite(p_min) || !std::isfinite(p_max) || !(p_max > p_min)) {
    throw DomainError("grid p range must be finite and increasing");
  }
}

PhaseSpaceGrid PhaseSpaceGrid::well(const PTParams& params, int nx, int np, double p_max) {
  if (!(p_max > 0.0)) throw DomainError("p_max must be positive");
  return {0.0, params.well_width(), nx, -p_max, p_max, np};
}

PhaseSpaceGrid PhaseSpaceGrid::for_state(const CoefficientState& state, int nx, int np) {
  return well(state.params(), nx, np, default_p_max(state));
}

bool PhaseSpaceGrid::spans_well(const PTParams& params) const noexcept {
  const double w = params.well_width();
  return std::abs(x_min_) <= 1e-12 * w && std::abs(x_max_ - w) <= 1e-12 * w;
}

double momentum_support(const CoefficientState& state) {
  const PTParams& p = state.params();
  return p.alpha() * (2.0 * occupied_top(state) + p.eta());
}

double default_p_max(const CoefficientState& state) { return 1.2 * momentum_support(state); }

}  // namespace ptw
