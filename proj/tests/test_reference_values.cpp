// Published reference values. Several of these do not reproduce; see README.

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "ptw/analysis.hpp"
#include "ptw/coherent.hpp"
#include "ptw/grid.hpp"
#include "ptw/moments.hpp"
#include "ptw/revival.hpp"
#include "ptw/sensitivity.hpp"
#include "ptw/spectrum.hpp"
#include "ptw/tile.hpp"
#include "ptw/wigner.hpp"

using namespace ptw;

namespace {

constexpr double kPi = std::numbers::pi;

const PTParams kSym(50, 50, 2);

CoefficientState packet(const PTParams& p, double beta, int s) {
  return evolve(coherent_coefficients(p, beta), FractionalTime(1, s));
}

bool within(double value, double target, double rel) { return std::abs(value - target) <= rel * std::abs(target); }

}  // namespace

TEST_CASE("potential minimum placement") {
  const auto argmin = [](const PTParams& p) {
    double best = 1e-4, vbest = potential_value(p, best);
    for (int i = 1; i < 40000; ++i) {
      const double x = p.well_width() * i / 40000;
      if (const double v = potential_value(p, x); v < vbest) {
        vbest = v;
        best = x;
      }
    }
    return best;
  };
  CHECK(std::abs(argmin(kSym) - kPi / 8) <= kSym.well_width() / 40000);
  CHECK(argmin(PTParams(50, 6, 2)) < kPi / 8);
}

TEST_CASE("occupation peak at level 12") {
  CHECK(peak_level(coherent_coefficients(kSym, 0.6)) == 12);
  CHECK(peak_level(coherent_coefficients(PTParams(50, 6, 2), 0.88)) == 12);
}

TEST_CASE("half revival sits on the other side of the well") {
  const auto c = coherent_coefficients(kSym, 0.6);
  const double x0 = state_moments(c).mean_x;
  CHECK(std::abs(state_moments(evolve(c, FractionalTime(1, 2))).mean_x - (kSym.well_width() - x0)) < 1e-8);
}

TEST_CASE("revival identities on the published parameter sets") {
  CHECK(cat_identity_residual(coherent_coefficients(kSym, 0.6)) < 1e-10);
  CHECK(cat_identity_residual(coherent_coefficients(kSym, 0.3)) < 1e-10);
  const auto e1 = even_odd_split(coherent_coefficients(PTParams(50, 6, 2), 0.88));
  CHECK(e1.branch == EvenOddBranch::EtaMultipleOf4);
  CHECK(e1.residual < 1e-10);
  const auto e2 = even_odd_split(coherent_coefficients(PTParams(50, 4, 2), 0.88));
  CHECK(e2.branch == EvenOddBranch::EtaTwiceOdd);
  CHECK(e2.residual < 1e-10);
  CHECK(compass_identity_residual(coherent_coefficients(kSym, 0.6)) < 1e-8);
  CHECK(compass_identity_residual(coherent_coefficients(kSym, 0.4)) < 1e-8);
}

TEST_CASE("compass amplitudes") {
  const auto d = clone_decomposition(coherent_coefficients(kSym, 0.6), FractionalTime(1, 8));
  REQUIRE(d.amplitudes.size() == 4);
  const cplx w = std::polar(1.0, -kPi / 4);
  const std::vector<cplx> expect{w / 2.0, 0.5, -w / 2.0, 0.5};
  const cplx phase = d.amplitudes[1] / std::abs(d.amplitudes[1]);
  for (int p = 0; p < 4; ++p) CHECK(std::abs(d.amplitudes[p] / phase - expect[p]) < 1e-8);
}

TEST_CASE("cat and benzene clone weights") {
  const auto c = coherent_coefficients(kSym, 0.6);
  const auto cat = clone_decomposition(c, FractionalTime(1, 4));
  REQUIRE(cat.amplitudes.size() == 2);
  for (const auto& a : cat.amplitudes) CHECK(std::abs(std::abs(a) - 1 / std::sqrt(2.0)) < 1e-8);
  const auto benzene = clone_decomposition(c, FractionalTime(1, 12));
  REQUIRE(benzene.amplitudes.size() == 6);
  for (const auto& a : benzene.amplitudes) CHECK(std::abs(std::norm(a) - 1.0 / 6) < 1e-6);
}

TEST_CASE("compass field has a central chess-board") {
  const auto s = packet(kSym, 0.6, 8);
  const auto field = wigner_fast(s, PhaseSpaceGrid::for_state(s, 512, 512));
  const auto m = state_moments(s);
  const auto& g = field.grid();
  const auto ic = static_cast<int>(std::lround((m.mean_x - g.x_min()) / g.dx()));
  const auto jc = static_cast<int>(std::lround((m.mean_p - g.p_min()) / g.dp()));
  double pos = 0.0, neg = 0.0;
  for (int i = ic - 20; i <= ic + 20; ++i) {
    for (int j = jc - 20; j <= jc + 20; ++j) {
      pos = std::max(pos, field(i, j));
      neg = std::min(neg, field(i, j));
    }
  }
  const double peak = field.values().maxCoeff();
  CHECK(pos > 0.25 * peak);
  CHECK(-neg > 0.25 * peak);
}

TEST_CASE("classical action of the compass state") {
  const double a6 = classical_action(packet(kSym, 0.6, 8));
  const double a3 = classical_action(packet(kSym, 0.3, 8));
  MESSAGE("A(0.6) = " << a6 << ", A(0.3) = " << a3);
  CHECK(within(a6, 9.225, 0.10));
  CHECK(within(a3, 0.748, 0.10));
}

TEST_CASE("tile areas") {
  const double r1 = measure_state_tile(packet(kSym, 0.6, 8)).area;
  const double r2 = measure_state_tile(packet(kSym, 0.6, 12)).area;
  const PTParams p22(50, 22, 2);
  const double r5 = measure_state_tile(packet(p22, beta_for_peak(p22, 12), 8)).area;
  MESSAGE("areas " << r1 << " " << r2 << " " << r5);
  CHECK(within(r1, 0.110, 0.15));
  CHECK(within(r2, 0.144, 0.15));
  CHECK(within(r5, 0.225, 0.20));
}

TEST_CASE("scaling sweep over beta 0.3..0.8") {
  std::vector<double> betas;
  for (int i = 0; i <= 10; ++i) betas.push_back(0.30 + 0.05 * i);
  const auto fit = scaling_sweep(kSym, betas, FractionalTime(1, 8));
  MESSAGE("slope " << fit.slope << ", r^2 " << fit.r_squared);
  CHECK(std::abs(fit.slope - (-1.02)) <= 0.08);
  for (const auto& p : fit.points) {
    INFO("beta " << p.beta << ": A a = " << p.action * p.area);
    CHECK(within(p.action * p.area, 1.0, 0.25));
  }
}

TEST_CASE("asymmetry sensitivity") {
  const auto r = asymmetry_experiment(kSym, PTParams(50, 46, 2), 0.6, 0.6);
  MESSAGE("overlap " << r.overlap_wigner << ", shift " << r.shift << ", tile dx " << r.tile_dx_span);
  CHECK(r.overlap_wigner >= 0.05);
  CHECK(r.overlap_wigner <= 0.2);
  CHECK(within(std::abs(r.shift), 0.01247, 0.20));
  CHECK(std::abs(r.shift) < r.tile_dx_span);
}

TEST_CASE("displacement overlap oscillation") {
  const double t = kSym.revival_time() / 8;
  const auto curve = overlap_sweep(kSym, 0.4, kPi / 4, 0.5, 501, t);
  const double dx = measure_state_tile(packet(kSym, 0.4, 8)).dx_span;
  REQUIRE(curve.period.has_value());
  MESSAGE("period " << *curve.period << ", tile dx " << dx);
  CHECK(within(*curve.period, 0.079, 0.10));
  CHECK(within(dx, 0.075, 0.10));
  CHECK(std::abs(*curve.period - dx) / *curve.period < 0.15);
  CHECK(curve.envelope_decays);
}
