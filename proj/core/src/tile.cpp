#include "ptw/tile.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ptw/error.hpp"
#include "ptw/moments.hpp"

namespace ptw {

namespace {

constexpr double kWindowPadding = 1.25;

// Distance from index i0 to the edge along a line, in grid coordinates; returns
// the interpolated coordinate where `crossed` first holds between k and k+dir.
template <typename Value, typename Coord, typename Crossed, typename Level>
double walk(Value value, Coord coord, int i0, int dir, int lo, int hi, Crossed crossed, Level level) {
  int k = i0;
  while (true) {
    const int next = k + dir;
    if (next < lo || next > hi) {
      throw MeasurementError("tile edge walk left the search window");
    }
    if (crossed(value(next))) {
      const double a = level(value(k));
      const double b = level(value(next));
      const double frac = a / (a - b);
      return coord(k) + frac * (coord(next) - coord(k));
    }
    k = next;
  }
}

}  // namespace

TileMeasurement measure_tile(const WignerField& field, std::optional<std::pair<double, double>> seed,
                             const TileOptions& options) {
  const auto& g = field.grid();
  double sx, sp;
  if (seed) {
    std::tie(sx, sp) = *seed;
  } else {
    const auto m = moments(field);
    sx = m.mean_x;
    sp = m.mean_p;
  }
  const double hx = options.x_half_window > 0 ? options.x_half_window : 0.1 * (g.x_max() - g.x_min());
  const double hp = options.p_half_window > 0 ? options.p_half_window : 0.1 * (g.p_max() - g.p_min());

  const int i_lo = std::max(0, static_cast<int>(std::ceil((sx - hx - g.x_min()) / g.dx())));
  const int i_hi = std::min(g.nx() - 1, static_cast<int>(std::floor((sx + hx - g.x_min()) / g.dx())));
  const int j_lo = std::max(0, static_cast<int>(std::ceil((sp - hp - g.p_min()) / g.dp())));
  const int j_hi = std::min(g.np() - 1, static_cast<int>(std::floor((sp + hp - g.p_min()) / g.dp())));
  if (i_hi - i_lo < 2 || j_hi - j_lo < 2) {
    throw MeasurementError("tile search window holds too few grid nodes");
  }

  double window_max = 0.0;
  for (int i = i_lo + 1; i < i_hi; ++i) {
    for (int j = j_lo + 1; j < j_hi; ++j) window_max = std::max(window_max, std::abs(field(i, j)));
  }
  if (window_max < 1e-6) {
    throw MeasurementError("no extremum above 1e-6 in the tile search window");
  }

  int bi = -1, bj = -1;
  double best = std::numeric_limits<double>::infinity();
  for (int i = i_lo + 1; i < i_hi; ++i) {
    for (int j = j_lo + 1; j < j_hi; ++j) {
      const double v = std::abs(field(i, j));
      if (v < options.candidate_fraction * window_max) continue;
      bool is_peak = true;
      for (int di = -1; di <= 1 && is_peak; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if (std::abs(field(i + di, j + dj)) > v) {
            is_peak = false;
            break;
          }
        }
      }
      if (!is_peak) continue;
      const double ux = (g.x(i) - sx) / hx;
      const double up = (g.p(j) - sp) / hp;
      const double d = ux * ux + up * up;
      if (d < best) {
        best = d;
        bi = i;
        bj = j;
      }
    }
  }
  if (bi < 0) {
    throw MeasurementError("no local extremum of |W| inside the tile search window");
  }

  const double w0 = field(bi, bj);
  const double sign = w0 > 0 ? 1.0 : -1.0;
  const double threshold = options.edge == TileEdge::HalfMaximum ? 0.5 * std::abs(w0) : 0.0;
  auto level = [&](double v) { return sign * v - threshold; };
  auto crossed = [&](double v) { return level(v) <= 0.0; };

  auto vx = [&](int i) { return field(i, bj); };
  auto cx = [&](int i) { return g.x(i); };
  auto vp = [&](int j) { return field(bi, j); };
  auto cp = [&](int j) { return g.p(j); };
  const double x_right = walk(vx, cx, bi, +1, i_lo, i_hi, crossed, level);
  const double x_left = walk(vx, cx, bi, -1, i_lo, i_hi, crossed, level);
  const double p_up = walk(vp, cp, bj, +1, j_lo, j_hi, crossed, level);
  const double p_down = walk(vp, cp, bj, -1, j_lo, j_hi, crossed, level);

  TileMeasurement out;
  out.center_x = g.x(bi);
  out.center_p = g.p(bj);
  out.value = w0;
  out.dx_span = x_right - x_left;
  out.dp_span = p_up - p_down;
  out.area = out.dx_span * out.dp_span;
  return out;
}

TileOptions tile_options_for(const CoefficientState& state) {
  const auto m = state_moments(state);
  TileOptions o;
  o.x_half_window = 3.5 / std::sqrt(m.var_p);
  o.p_half_window = 3.5 / std::sqrt(m.var_x);
  return o;
}

PhaseSpaceGrid tile_grid(const CoefficientState& state, int nx, int np) {
  const auto o = tile_options_for(state);
  const auto m = state_moments(state);
  const double p_max = kWindowPadding * (std::abs(m.mean_p) + o.p_half_window);
  return PhaseSpaceGrid::well(state.params(), nx, np, p_max);
}

TileMeasurement measure_state_tile(const CoefficientState& state) {
  const auto field = wigner_fast(state, tile_grid(state));
  const auto m = state_moments(state);
  return measure_tile(field, std::pair{m.mean_x, m.mean_p}, tile_options_for(state));
}

}  // namespace ptw
