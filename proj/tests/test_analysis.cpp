#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "ptw/analysis.hpp"
#include "ptw/coherent.hpp"
#include "ptw/error.hpp"
#include "ptw/grid.hpp"
#include "ptw/moments.hpp"
#include "ptw/tile.hpp"
#include "ptw/wigner.hpp"

using namespace ptw;

namespace {

constexpr double kPi = std::numbers::pi;

const PTParams kSym(50, 50, 2);

// cos(kx (x − x0)) cos(kp (p − p0)) sampled on a fine grid.
WignerField checkerboard(double kx, double kp, double x0, double p0) {
  const PhaseSpaceGrid g(0.0, 1.0, 2001, -5.0, 5.0, 2001);
  RowMatrix w(g.nx(), g.np());
  for (int i = 0; i < g.nx(); ++i) {
    for (int j = 0; j < g.np(); ++j) w(i, j) = std::cos(kx * (g.x(i) - x0)) * std::cos(kp * (g.p(j) - p0));
  }
  return WignerField(g, w);
}

}  // namespace

TEST_CASE("tile spans on a synthetic checkerboard") {
  const double kx = 60.0, kp = 7.0;
  const auto field = checkerboard(kx, kp, 0.5, 0.3);
  TileOptions opt;
  opt.x_half_window = 0.15;
  opt.p_half_window = 1.2;

  SUBCASE("half maximum") {
    const auto t = measure_tile(field, std::pair{0.51, 0.25}, opt);
    CHECK(t.center_x == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(t.center_p == doctest::Approx(0.3).epsilon(1e-2));
    CHECK(t.dx_span == doctest::Approx(2 * kPi / (3 * kx)).epsilon(1e-3));
    CHECK(t.dp_span == doctest::Approx(2 * kPi / (3 * kp)).epsilon(1e-3));
    CHECK(t.area == doctest::Approx(t.dx_span * t.dp_span));
  }
  SUBCASE("zero crossing") {
    opt.edge = TileEdge::ZeroCrossing;
    const auto t = measure_tile(field, std::pair{0.51, 0.25}, opt);
    CHECK(t.dx_span == doctest::Approx(kPi / kx).epsilon(1e-3));
    CHECK(t.dp_span == doctest::Approx(kPi / kp).epsilon(1e-3));
  }
  SUBCASE("negative tiles are measured the same way") {
    const auto t = measure_tile(field, std::pair{0.5 + kPi / kx, 0.3}, opt);
    CHECK(t.value < 0.0);
    CHECK(t.dx_span == doctest::Approx(2 * kPi / (3 * kx)).epsilon(1e-3));
  }
  SUBCASE("nearest candidate to the seed wins") {
    const auto t = measure_tile(field, std::pair{0.5 + 2 * kPi / kx + 0.005, 0.3}, opt);
    CHECK(t.center_x == doctest::Approx(0.5 + 2 * kPi / kx).epsilon(1e-3));
  }
}

TEST_CASE("tile measurement failures") {
  const PhaseSpaceGrid g(0.0, 1.0, 64, -1.0, 1.0, 64);
  const WignerField flat(g, RowMatrix::Zero(64, 64));
  CHECK_THROWS_AS(measure_tile(flat, std::pair{0.5, 0.0}), MeasurementError);

  // A ramp has no interior extremum.
  RowMatrix ramp(64, 64);
  for (int i = 0; i < 64; ++i) ramp.row(i).setConstant(g.x(i));
  CHECK_THROWS_AS(measure_tile(WignerField(g, ramp), std::pair{0.5, 0.0}), MeasurementError);

  // A wide bump cannot close inside a narrow window.
  const auto wide = checkerboard(1.0, 0.1, 0.5, 0.0);
  TileOptions opt;
  opt.x_half_window = 0.05;
  opt.p_half_window = 0.5;
  CHECK_THROWS_AS(measure_tile(wide, std::pair{0.5, 0.0}, opt), MeasurementError);
}

TEST_CASE("state tiles are deterministic") {
  const auto state = evolve(coherent_coefficients(kSym, 0.6), FractionalTime(1, 8));
  const auto a = measure_state_tile(state);
  const auto b = measure_state_tile(state);
  CHECK(a.area == b.area);
  CHECK(a.dx_span == b.dx_span);
  CHECK(a.area > 0.0);
}

TEST_CASE("tiles shrink as the action grows") {
  const std::vector<double> betas{0.4, 0.55, 0.7};
  double last_area = std::numeric_limits<double>::infinity();
  double last_action = 0.0;
  for (double beta : betas) {
    const auto s = evolve(coherent_coefficients(kSym, beta), FractionalTime(1, 8));
    const double action = classical_action(s);
    const double area = measure_state_tile(s).area;
    CHECK(action > last_action);
    CHECK(area < last_area);
    last_action = action;
    last_area = area;
  }
}

TEST_CASE("action agrees between coefficient and field routes") {
  const auto s = evolve(coherent_coefficients(kSym, 0.6), FractionalTime(1, 8));
  const auto m = moments(wigner_fast(s, PhaseSpaceGrid::for_state(s, 512, 512)));
  CHECK(std::sqrt(m.var_x * m.var_p) == doctest::Approx(classical_action(s)).epsilon(1e-4));
  CHECK(classical_action(basis_state(kSym, 0)) >= 0.5);
}

TEST_CASE("scaling fit") {
  SUBCASE("exact power law") {
    std::vector<ScalingPoint> pts;
    for (double A : {2.0, 4.0, 8.0, 16.0}) pts.push_back({0.1 * A, A, 1.3 / A});
    const auto f = fit_scaling(pts);
    CHECK(f.slope == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::exp(f.intercept) == doctest::Approx(1.3).epsilon(1e-12));
    CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(fit_scaling({{0.1, 1, 1}, {0.2, 2, 0.5}}), PreconditionError);
  CHECK_THROWS_AS(fit_scaling({{0.1, 1, 1}, {0.2, 2, 0.5}, {0.3, 3, -1}}), PreconditionError);
  CHECK_THROWS_AS(fit_scaling({{0.1, 2, 1}, {0.2, 2, 0.5}, {0.3, 2, 0.3}}), PreconditionError);
  const std::vector<double> bad{0.3, 0.5, 1.2};
  CHECK_THROWS_AS(scaling_sweep(kSym, bad, FractionalTime(1, 8)), DomainError);
}

TEST_CASE("overlaps") {
  const auto a = coherent_coefficients(kSym, 0.6);
  const auto b = evolve(a, 0.002);

  CHECK(std::abs(overlap_coeff(a, a) - 1.0) < 1e-14);
  CHECK_THROWS_AS(overlap_coeff(a, coherent_coefficients(PTParams(50, 46, 2), 0.6)), MismatchError);

  SUBCASE("Wigner route equals |<a|b>|^2") {
    const auto grid = PhaseSpaceGrid::for_state(a, 512, 512);
    const double w = overlap_wigner(wigner_fast(a, grid), wigner_fast(b, grid));
    CHECK(w == doctest::Approx(std::norm(overlap_coeff(a, b))).epsilon(1e-4));
  }
  SUBCASE("position route equals the coefficient route") {
    CHECK(std::abs(overlap_position(a, b) - overlap_coeff(a, b)) < 1e-8);
  }
  SUBCASE("different wells") {
    const auto c = coherent_coefficients(PTParams(50, 46, 2), 0.6);
    const double m = std::abs(overlap_position(a, c));
    CHECK(m > 0.0);
    CHECK(m < 1.0);
    CHECK_THROWS_AS(overlap_position(a, coherent_coefficients(PTParams(50, 50, 3), 0.6)), MismatchError);
  }
  const auto g1 = PhaseSpaceGrid::for_state(a, 64, 64);
  const auto g2 = PhaseSpaceGrid::for_state(a, 64, 80);
  CHECK_THROWS_AS(overlap_wigner(wigner_fast(a, g1), wigner_fast(a, g2)), MismatchError);
}

TEST_CASE("beta for a given occupation peak") {
  for (const PTParams& p : {kSym, PTParams(50, 34, 2), PTParams(50, 22, 2)}) {
    for (int nbar : {5, 12, 20}) CHECK(peak_level(coherent_coefficients(p, beta_for_peak(p, nbar))) == nbar);
  }
  CHECK_THROWS_AS(beta_for_peak(kSym, 0), DomainError);
}

TEST_CASE("asymmetry experiment") {
  const auto r = asymmetry_experiment(kSym, PTParams(50, 46, 2), 0.6, 0.6, 256);
  CHECK(r.section_x.size() == r.section_sym.size());
  CHECK(r.section_x.size() == r.section_asym.size());
  CHECK(r.overlap_wigner > 0.0);
  CHECK(r.overlap_wigner == doctest::Approx(r.overlap_magnitude * r.overlap_magnitude).epsilon(1e-3));
  CHECK(std::isfinite(r.shift));
  CHECK(r.tile_dx_span > 0.0);

  const auto same = asymmetry_experiment(kSym, kSym, 0.6, 0.6, 256);
  CHECK(std::abs(same.shift) < 1e-9);
  CHECK(same.overlap_magnitude == doctest::Approx(1.0).epsilon(1e-8));
  CHECK_THROWS_AS(asymmetry_experiment(kSym, PTParams(50, 46, 3), 0.6, 0.6), MismatchError);
}
