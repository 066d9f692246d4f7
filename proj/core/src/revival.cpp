#include "ptw/revival.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "ptw/error.hpp"

namespace ptw {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_even_integer(double v) { return std::nearbyint(v) == v && static_cast<long long>(v) % 2 == 0; }

CoefficientState combine(const PTParams& params, std::span<const cplx> weights,
                         std::span<const CoefficientState> states) {
  int size = 0;
  for (const auto& s : states) size = std::max(size, s.size());
  std::vector<cplx> out(size, cplx{});
  for (std::size_t q = 0; q < states.size(); ++q) {
    for (int n = 0; n < states[q].size(); ++n) out[n] += weights[q] * states[q].coeffs()[n];
  }
  return {params, std::move(out)};
}

}  // namespace

CoefficientState classical_packet(const CoefficientState& state0, double t) {
  if (!std::isfinite(t)) throw DomainError("time must be finite");
  const double omega = 2.0 * kPi / state0.params().classical_period();
  // Reduce t modulo T_cl first so the phases stay small.
  const double tr = std::fmod(t, state0.params().classical_period());
  std::vector<cplx> c(state0.coeffs());
  for (int n = 0; n < state0.size(); ++n) c[n] *= std::polar(1.0, -omega * tr * n);
  return {state0.params(), std::move(c)};
}

double phase_aligned_residual(const CoefficientState& a, const CoefficientState& b) {
  const int size = std::max(a.size(), b.size());
  cplx inner{};
  for (int n = 0; n < size; ++n) inner += std::conj(b[n]) * a[n];
  const cplx phase = std::abs(inner) > 0.0 ? inner / std::abs(inner) : cplx(1.0);
  double s = 0.0;
  for (int n = 0; n < size; ++n) s += std::norm(a[n] - phase * b[n]);
  return std::sqrt(s);
}

double cat_identity_residual(const CoefficientState& state0) {
  const PTParams& p = state0.params();
  if (!p.is_symmetric() || !is_even_integer(p.rho())) {
    throw PreconditionError("cat identity needs rho = kappa, both even integers");
  }
  const auto evolved = evolve(state0, FractionalTime(1, 4));
  const CoefficientState parts[] = {state0, reflect(state0)};
  const cplx weights[] = {std::polar(1.0 / std::sqrt(2.0), -kPi / 4), std::polar(1.0 / std::sqrt(2.0), kPi / 4)};
  return phase_aligned_residual(evolved, combine(p, weights, parts));
}

EvenOddResult even_odd_split(const CoefficientState& state0) {
  const PTParams& p = state0.params();
  if (!p.eta_is_integer() || p.eta_integer() % 2 != 0) {
    throw PreconditionError("even/odd split needs rho + kappa to be an even integer");
  }
  const bool mult4 = p.eta_integer() % 4 == 0;
  const cplx even_w = mult4 ? cplx(1, 0) : cplx(0, -1);
  const cplx odd_w = mult4 ? cplx(0, -1) : cplx(1, 0);
  std::vector<cplx> expected(state0.coeffs());
  for (int n = 0; n < state0.size(); ++n) expected[n] *= n % 2 == 0 ? even_w : odd_w;
  const auto evolved = evolve(state0, FractionalTime(1, 4));
  return {mult4 ? EvenOddBranch::EtaMultipleOf4 : EvenOddBranch::EtaTwiceOdd,
          phase_aligned_residual(evolved, CoefficientState(p, std::move(expected)))};
}

double compass_identity_residual(const CoefficientState& state0) {
  const PTParams& p = state0.params();
  if (!p.eta_is_integer()) throw PreconditionError("compass identity needs integer rho + kappa");
  const double t = FractionalTime(1, 8).time(p);
  const double tcl = p.classical_period();
  const CoefficientState parts[] = {classical_packet(state0, t), classical_packet(state0, t + tcl / 4),
                                    classical_packet(state0, t + tcl / 2), classical_packet(state0, t + 3 * tcl / 4)};
  const cplx e = std::polar(0.5, -kPi / 4);
  const cplx weights[] = {e, 0.5, -e, 0.5};
  return phase_aligned_residual(evolve(state0, FractionalTime(1, 8)), combine(p, weights, parts));
}

CloneDecomposition clone_decomposition(const CoefficientState& state0, FractionalTime frac) {
  const PTParams& p = state0.params();
  if (!p.eta_is_integer()) throw PreconditionError("clone decomposition needs integer rho + kappa");
  const int l = frac.clone_count();
  const double t = frac.time(p);
  const double tcl = p.classical_period();
  const int size = state0.size();
  // For s ≡ 2 (mod 4) the quadratic phase flips sign under n → n + s/2, which
  // puts the clones halfway between the multiples of T_cl/l.
  const double shift = frac.s() % 4 == 2 ? 0.5 : 0.0;

  Eigen::MatrixXcd basis(size, l);
  CloneDecomposition out;
  for (int q = 0; q < l; ++q) {
    const double offset = (q + shift) / l;
    const auto packet = classical_packet(state0, t + offset * tcl);
    for (int n = 0; n < size; ++n) basis(n, q) = packet.coeffs()[n];
    out.phase_offsets.push_back(offset);
  }
  const auto evolved = evolve(state0, frac);
  const Eigen::VectorXcd target = Eigen::Map<const Eigen::VectorXcd>(evolved.coeffs().data(), size);

  const Eigen::MatrixXcd gram = basis.adjoint() * basis;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 1e-10 * hi)) {
    throw ConvergenceError("classical packets are numerically collinear; clone fit is rank deficient");
  }
  const Eigen::VectorXcd a = gram.ldlt().solve(basis.adjoint() * target);
  out.amplitudes.assign(a.data(), a.data() + l);
  out.residual = (target - basis * a).norm();
  return out;
}

int density_lobe_count(const CoefficientState& state, int samples, double level) {
  const double width = state.params().well_width();
  std::vector<double> xs(samples + 1);
  for (int i = 0; i <= samples; ++i) xs[i] = width * i / samples;
  const auto chi = position_wavefunction(state, xs);
  double peak = 0.0;
  for (const auto& v : chi) peak = std::max(peak, std::norm(v));
  int lobes = 0;
  bool inside = false;
  for (const auto& v : chi) {
    const bool above = std::norm(v) > level * peak;
    if (above && !inside) ++lobes;
    inside = above;
  }
  return lobes;
}

}  // namespace ptw
