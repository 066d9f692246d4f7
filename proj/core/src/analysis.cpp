#include "ptw/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ptw/error.hpp"
#include "ptw/moments.hpp"
#include "ptw/spectrum.hpp"

namespace ptw {

namespace {

constexpr double kPi = std::numbers::pi;

// Interior local extrema of v (sign-aware), as indices.
std::vector<int> extrema(const std::vector<double>& v) {
  std::vector<int> out;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if ((v[i] > v[i - 1] && v[i] >= v[i + 1]) || (v[i] < v[i - 1] && v[i] <= v[i + 1])) {
      out.push_back(static_cast<int>(i));
    }
  }
  return out;
}

// Parabolic vertex offset (in samples) through three equally spaced values.
double vertex_offset(double a, double b, double c) {
  const double den = a - 2.0 * b + c;
  return den == 0.0 ? 0.0 : 0.5 * (a - c) / den;
}

}  // namespace

ScalingFit fit_scaling(std::vector<ScalingPoint> points) {
  if (points.size() < 3) throw PreconditionError("scaling fit needs at least 3 points");
  for (const auto& p : points) {
    if (!(p.action > 0.0) || !(p.area > 0.0)) throw PreconditionError("scaling fit needs positive A and a");
  }
  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) { return a.beta < b.beta; });
  const double n = static_cast<double>(points.size());
  double mx = 0, my = 0;
  for (const auto& p : points) {
    mx += std::log(p.action) / n;
    my += std::log(p.area) / n;
  }
  double cxx = 0, cxy = 0, cyy = 0;
  for (const auto& p : points) {
    const double x = std::log(p.action) - mx;
    const double y = std::log(p.area) - my;
    cxx += x * x;
    cxy += x * y;
    cyy += y * y;
  }
  if (!(cxx > 0.0)) throw PreconditionError("scaling fit needs distinct actions");
  ScalingFit fit;
  fit.slope = cxy / cxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = cyy > 0.0 ? cxy * cxy / (cxx * cyy) : 1.0;
  fit.points = std::move(points);
  return fit;
}

ScalingFit scaling_sweep(const PTParams& params, std::span<const double> betas, FractionalTime frac) {
  if (betas.size() < 3) throw PreconditionError("scaling sweep needs at least 3 beta values");
  std::vector<ScalingPoint> points;
  for (double beta : betas) {
    if (!(beta > 0.0 && beta < 1.0)) throw DomainError("scaling sweep beta must lie in (0, 1)");
    const auto state = evolve(coherent_coefficients(params, beta), frac);
    points.push_back({beta, classical_action(state), measure_state_tile(state).area});
  }
  return fit_scaling(std::move(points));
}

cplx overlap_coeff(const CoefficientState& a, const CoefficientState& b) {
  if (!(a.params() == b.params())) throw MismatchError("overlap of states from different potentials");
  const int size = std::max(a.size(), b.size());
  cplx s{};
  for (int n = 0; n < size; ++n) s += std::conj(a[n]) * b[n];
  return s;
}

double overlap_wigner(const WignerField& a, const WignerField& b) {
  if (!(a.grid() == b.grid())) throw MismatchError("Wigner overlap needs identical grids");
  const auto& g = a.grid();
  const auto wx = trapezoid_weights(g.nx(), g.dx());
  const auto wp = trapezoid_weights(g.np(), g.dp());
  double s = 0.0;
  for (int i = 0; i < g.nx(); ++i) {
    double row = 0.0;
    for (int j = 0; j < g.np(); ++j) row += wp[j] * a(i, j) * b(i, j);
    s += wx[i] * row;
  }
  return 2.0 * kPi * s;
}

cplx overlap_position(const CoefficientState& a, const CoefficientState& b, int samples) {
  if (a.params().alpha() != b.params().alpha()) throw MismatchError("states live in different wells");
  const double width = a.params().well_width();
  std::vector<double> xs(samples + 1);
  for (int i = 0; i <= samples; ++i) xs[i] = width * i / samples;
  const auto ca = position_wavefunction(a, xs);
  const auto cb = position_wavefunction(b, xs);
  const auto w = trapezoid_weights(samples + 1, width / samples);
  cplx s{};
  for (int i = 0; i <= samples; ++i) s += w[i] * std::conj(ca[i]) * cb[i];
  return s;
}

double beta_for_peak(const PTParams& params, int nbar) {
  if (nbar < 1) throw DomainError("peak level must be at least 1");
  // |c_{n+1}/c_n|² = β² N_n²/N_{n+1}²; equal neighbours on both sides of n̄.
  auto ratio = [&](int n) { return std::exp(2.0 * (log_normalization(params, n) - log_normalization(params, n + 1))); };
  return std::pow(ratio(nbar - 1) * ratio(nbar), -0.25);
}

AsymmetryReport asymmetry_experiment(const PTParams& sym, const PTParams& asym, double beta_sym, double beta_asym,
                                     int grid_size) {
  if (sym.alpha() != asym.alpha()) throw MismatchError("asymmetry experiment needs a common alpha");
  const auto s = evolve(coherent_coefficients(sym, beta_sym), FractionalTime(1, 8));
  const auto a = evolve(coherent_coefficients(asym, beta_asym), FractionalTime(1, 8));

  AsymmetryReport r{sym, asym, beta_sym, beta_asym, 0.0, 0.0, {}, {}, {}, 0.0, std::nullopt, 0.0};
  const double p_max = std::max(default_p_max(s), default_p_max(a));
  const auto grid = PhaseSpaceGrid::well(sym, grid_size, grid_size, p_max);
  r.overlap_wigner = overlap_wigner(wigner_fast(s, grid), wigner_fast(a, grid));
  r.overlap_magnitude = std::abs(overlap_position(s, a));

  const auto tile = measure_state_tile(s);
  r.tile_dx_span = tile.dx_span;

  // Central window around the symmetric tile; the asymmetric section is
  // sampled on a wider span so every lag in ±half/2 stays inside it.
  const auto opts = tile_options_for(s);
  const double half = opts.x_half_window;
  const double xc = tile.center_x;
  constexpr int kSamples = 801;
  const double step = 2.0 * half / (kSamples - 1);
  const int pad = (kSamples - 1) / 4;
  std::vector<double> xs_wide(kSamples + 2 * pad);
  for (std::size_t i = 0; i < xs_wide.size(); ++i) {
    xs_wide[i] = std::clamp(xc - half + (static_cast<double>(i) - pad) * step, 0.0, sym.well_width());
  }
  r.section_x.assign(xs_wide.begin() + pad, xs_wide.begin() + pad + kSamples);
  r.section_sym = wigner_section(s, r.section_x, 0.0);
  const auto wide_asym = wigner_section(a, xs_wide, 0.0);
  r.section_asym.assign(wide_asym.begin() + pad, wide_asym.begin() + pad + kSamples);

  if (sym == asym && beta_sym == beta_asym) {
    r.shift = 0.0;
  } else {
    std::vector<double> cost(2 * pad + 1);
    for (int lag = -pad; lag <= pad; ++lag) {
      double c = 0.0;
      for (int i = 0; i < kSamples; ++i) {
        const double d = r.section_sym[i] - wide_asym[i + pad + lag];
        c += d * d;
      }
      cost[lag + pad] = c;
    }
    const int best = static_cast<int>(std::min_element(cost.begin(), cost.end()) - cost.begin());
    double off = 0.0;
    if (best > 0 && best < 2 * pad) off = vertex_offset(cost[best - 1], cost[best], cost[best + 1]);
    r.shift = (best - pad + off) * step;
  }

  // Central extremum of the symmetric section: the largest |W| extremum nearest xc.
  const auto ext_s = extrema(r.section_sym);
  const auto ext_a = extrema(r.section_asym);
  double peak = 0.0;
  for (int i : ext_s) peak = std::max(peak, std::abs(r.section_sym[i]));
  int central = -1;
  for (int i : ext_s) {
    if (std::abs(r.section_sym[i]) < 0.5 * peak) continue;
    if (central < 0 || std::abs(r.section_x[i] - xc) < std::abs(r.section_x[central] - xc)) central = i;
  }
  if (central >= 0) {
    const double sign = r.section_sym[central] > 0 ? 1.0 : -1.0;
    int match = -1;
    for (int i : ext_a) {
      if (sign * r.section_asym[i] >= 0.0) continue;
      if (match < 0 || std::abs(i - central) < std::abs(match - central)) match = i;
    }
    if (match >= 0) r.extremum_shift = r.section_x[match] - r.section_x[central];
  }
  return r;
}

}  // namespace ptw
