#pragma once

#include <optional>

#include "ptw/coherent.hpp"
#include "ptw/grid.hpp"
#include "ptw/wigner.hpp"

namespace ptw {

/// How the extent of a tile is read off W along each axis.
enum class TileEdge {
  /// |W| falls to half of the extremum value. Stable on checkerboards whose
  /// zero lines only touch the axes through an extremum.
  HalfMaximum,
  /// W changes sign.
  ZeroCrossing,
};

struct TileOptions {
  /// Search window half-widths around the seed; ≤ 0 means 10% of the grid span.
  double x_half_window = 0.0;
  double p_half_window = 0.0;
  /// Candidate extrema must reach this fraction of the window's max |W|.
  double candidate_fraction = 0.5;
  TileEdge edge = TileEdge::HalfMaximum;
};

struct TileMeasurement {
  double center_x;
  double center_p;
  double value;    // W at the extremum
  double dx_span;  // extent along x at fixed p
  double dp_span;  // extent along p at fixed x
  double area;     // dx_span · dp_span
};

/// Measures the interference tile whose extremum is nearest the seed
/// (default: the field's centroid). MeasurementError when the window holds
/// no |W| ≥ 1e−6 or a walk leaves the window.
TileMeasurement measure_tile(const WignerField& field, std::optional<std::pair<double, double>> seed = std::nullopt,
                             const TileOptions& options = {});

/// Full-well grid fine enough in x to resolve the smallest tiles of `state`
/// and wide enough in p to hold the search window of tile_options_for().
PhaseSpaceGrid tile_grid(const CoefficientState& state, int nx = 2048, int np = 512);

/// Window of ±3.5/Δp in x and ±3.5/Δx in p, scaled to the state's spreads.
TileOptions tile_options_for(const CoefficientState& state);

/// tile_grid + wigner_fast + measure_tile seeded at the coefficient-basis centroid.
TileMeasurement measure_state_tile(const CoefficientState& state);

}  // namespace ptw
