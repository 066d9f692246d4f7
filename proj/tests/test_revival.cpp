#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "ptw/coherent.hpp"
#include "ptw/error.hpp"
#include "ptw/moments.hpp"
#include "ptw/revival.hpp"

using namespace ptw;

namespace {

constexpr double kPi = std::numbers::pi;

const PTParams kSym(50, 50, 2);

}  // namespace

TEST_CASE("classical packet follows the classical period") {
  const auto c = coherent_coefficients(kSym, 0.6);
  CHECK(phase_aligned_residual(classical_packet(c, kSym.classical_period()), c) < 1e-12);
  CHECK(phase_aligned_residual(classical_packet(c, 0.0), c) == 0.0);
  // Half a classical period moves the packet to the mirror side.
  const auto half = classical_packet(c, kSym.classical_period() / 2);
  CHECK(phase_aligned_residual(half, reflect(c)) < 1e-12);
}

TEST_CASE("phase aligned residual ignores a global phase") {
  const auto c = coherent_coefficients(kSym, 0.5);
  std::vector<cplx> rotated(c.coeffs());
  for (auto& v : rotated) v *= std::polar(1.0, 1.234);
  CHECK(phase_aligned_residual(c, CoefficientState(kSym, rotated)) < 1e-14);
  CHECK(phase_aligned_residual(c, c.resized(c.n_max() + 10)) < 1e-14);
}

TEST_CASE("full revival restores the state") {
  for (const PTParams& p : {kSym, PTParams(50, 6, 2), PTParams(50, 22, 2)}) {
    const auto c = coherent_coefficients(p, 0.6);
    CHECK(phase_aligned_residual(evolve(c, FractionalTime(1, 1)), c) < 1e-12);
  }
}

TEST_CASE("quarter-revival cat identity") {
  for (double beta : {0.2, 0.45, 0.6, 0.8}) {
    CHECK(cat_identity_residual(coherent_coefficients(kSym, beta)) < 1e-12);
  }
  CHECK(cat_identity_residual(coherent_coefficients(PTParams(4, 4, 2), 0.2)) < 1e-12);
  CHECK_THROWS_AS(cat_identity_residual(coherent_coefficients(PTParams(50, 46, 2), 0.6)), PreconditionError);
  CHECK_THROWS_AS(cat_identity_residual(coherent_coefficients(PTParams(5, 5, 2), 0.6)), PreconditionError);
}

TEST_CASE("even/odd split at the quarter revival") {
  SUBCASE("eta multiple of 4") {
    const auto r = even_odd_split(coherent_coefficients(kSym, 0.6));
    CHECK(r.branch == EvenOddBranch::EtaMultipleOf4);
    CHECK(r.residual < 1e-12);
  }
  SUBCASE("eta twice odd") {
    const auto r = even_odd_split(coherent_coefficients(PTParams(50, 52, 2), 0.6));
    CHECK(r.branch == EvenOddBranch::EtaTwiceOdd);
    CHECK(r.residual < 1e-12);
  }
  SUBCASE("asymmetric wells obey the same split") {
    const auto r = even_odd_split(coherent_coefficients(PTParams(50, 6, 2), 0.88));
    CHECK(r.residual < 1e-12);
  }
  CHECK_THROWS_AS(even_odd_split(coherent_coefficients(PTParams(50, 51, 2), 0.6)), PreconditionError);
}

TEST_CASE("eighth-revival compass identity") {
  for (const PTParams& p : {kSym, PTParams(50, 46, 2), PTParams(50, 22, 2), PTParams(50, 51, 2)}) {
    CHECK(compass_identity_residual(coherent_coefficients(p, 0.6)) < 1e-12);
  }
  CHECK_THROWS_AS(compass_identity_residual(coherent_coefficients(PTParams(50, 6.5, 2), 0.6)), PreconditionError);
}

TEST_CASE("clone decomposition") {
  const auto c = coherent_coefficients(kSym, 0.6);
  for (int s : {4, 6, 8, 12}) {
    const FractionalTime frac(1, s);
    const auto d = clone_decomposition(c, frac);
    CHECK(static_cast<int>(d.amplitudes.size()) == frac.clone_count());
    CHECK(d.residual < 1e-10);
    for (const auto& a : d.amplitudes) {
      CHECK(std::norm(a) == doctest::Approx(1.0 / frac.clone_count()).epsilon(1e-8));
    }
    const double shift = s % 4 == 2 ? 0.5 : 0.0;
    for (int p = 0; p < frac.clone_count(); ++p) {
      CHECK(d.phase_offsets[p] == doctest::Approx((p + shift) / frac.clone_count()));
    }
  }
  SUBCASE("odd s gives s clones") {
    const auto d = clone_decomposition(c, FractionalTime(1, 3));
    CHECK(d.amplitudes.size() == 3);
    CHECK(d.residual < 1e-10);
  }
  SUBCASE("collinear packets are reported") {
    // A lone ground state has no spread in n, so every shifted packet is the same vector.
    CHECK_THROWS_AS(clone_decomposition(basis_state(kSym, 0), FractionalTime(1, 8)), ConvergenceError);
  }
  CHECK_THROWS_AS(clone_decomposition(coherent_coefficients(PTParams(50, 6.5, 2), 0.6), FractionalTime(1, 8)),
                  PreconditionError);
}

TEST_CASE("fractional evolution residuals grow away from revival times") {
  const auto c = coherent_coefficients(kSym, 0.6);
  const auto target = evolve(c, FractionalTime(1, 4));
  double previous = 0.0;
  for (double eps : {1e-7, 1e-6, 1e-5, 1e-4}) {
    const double r = phase_aligned_residual(evolve(c, kSym.revival_time() / 4 + eps), target);
    CHECK(r > previous * 0.99);
    previous = r;
  }
  CHECK(previous > 1e-3);
}

TEST_CASE("energy is conserved under evolution") {
  const auto c = coherent_coefficients(PTParams(50, 22, 2), 0.7);
  const double e0 = c.mean_energy();
  const double e2 = c.mean_energy_squared();
  for (double t : {0.001, 0.1, 3.7}) {
    const auto ct = evolve(c, t);
    CHECK(ct.mean_energy() == doctest::Approx(e0).epsilon(1e-13));
    CHECK(ct.mean_energy_squared() == doctest::Approx(e2).epsilon(1e-13));
  }
  CHECK(evolve(c, FractionalTime(3, 8)).mean_energy() == doctest::Approx(e0).epsilon(1e-13));
}

TEST_CASE("density lobes") {
  const auto c = coherent_coefficients(kSym, 0.6);
  CHECK(density_lobe_count(c) == 1);
  CHECK(density_lobe_count(evolve(c, FractionalTime(1, 4))) == 2);
  CHECK(density_lobe_count(basis_state(kSym, 4)) == 5);
}

TEST_CASE("half revival is the mirror image") {
  const auto c = coherent_coefficients(kSym, 0.6);
  const auto half = evolve(c, FractionalTime(1, 2));
  CHECK(phase_aligned_residual(half, reflect(c)) < 1e-12);
  CHECK(state_moments(half).mean_x == doctest::Approx(kPi / 4 - state_moments(c).mean_x).epsilon(1e-10));
}
