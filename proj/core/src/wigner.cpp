#include "ptw/wigner.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "ptw/error.hpp"
#include "ptw/spectrum.hpp"

namespace ptw {

namespace {

constexpr double kPi = std::numbers::pi;

void check_grid(const CoefficientState& state, const PhaseSpaceGrid& grid) {
  if (!grid.spans_well(state.params())) {
    throw PreconditionError("grid x range must equal the well [0, pi/(2 alpha)]");
  }
}

double p_abs_max(const PhaseSpaceGrid& grid) { return std::max(std::abs(grid.p_min()), std::abs(grid.p_max())); }

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

FftwBuffer fftw_buffer(std::size_t n) {
  return FftwBuffer(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n)));
}

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

std::size_t next_pow2(std::size_t n) {
  std::size_t l = 1;
  while (l < n) l <<= 1;
  return l;
}

// Simpson nodes and weights on [−zmax, zmax] with spacing at most h.
void simpson_nodes(double zmax, double h, std::vector<double>& z, std::vector<double>& w) {
  int intervals = 2 * std::max(1, static_cast<int>(std::ceil(zmax / h)));
  const double step = 2.0 * zmax / intervals;
  z.resize(intervals + 1);
  w.resize(intervals + 1);
  for (int k = 0; k <= intervals; ++k) {
    z[k] = -zmax + k * step;
    w[k] = (k == 0 || k == intervals) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    w[k] *= step / 3.0;
  }
}

// χ at many arbitrary points, reusing one basis.
void sample_state(const CoefficientState& state, const EigenBasis& basis, std::span<const double> xs,
                  std::vector<cplx>& out, std::vector<double>& buf) {
  const auto& c = state.coeffs();
  const double width = state.params().well_width();
  out.resize(xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const double x = std::clamp(xs[j], 0.0, width);
    basis.evaluate(x, buf);
    cplx acc{};
    for (int n = 0; n < state.size(); ++n) acc += c[n] * buf[n];
    out[j] = acc;
  }
}

}  // namespace

WignerField::WignerField(PhaseSpaceGrid grid, RowMatrix values, double imag_residue)
    : grid_(grid), values_(std::move(values)), imag_residue_(imag_residue) {
  if (values_.rows() != grid_.nx() || values_.cols() != grid_.np()) {
    throw MismatchError("Wigner values do not match the grid shape");
  }
}

double WignerField::integral() const {
  const auto wx = trapezoid_weights(grid_.nx(), grid_.dx());
  const auto wp = trapezoid_weights(grid_.np(), grid_.dp());
  double s = 0.0;
  for (int i = 0; i < grid_.nx(); ++i) {
    double row = 0.0;
    for (int j = 0; j < grid_.np(); ++j) row += wp[j] * values_(i, j);
    s += wx[i] * row;
  }
  return s;
}

std::vector<double> trapezoid_weights(int n, double h) {
  std::vector<double> w(n, h);
  if (n > 0) {
    w.front() *= 0.5;
    w.back() *= 0.5;
  }
  return w;
}

double z_step_limit(const CoefficientState& state, const PhaseSpaceGrid& grid) {
  const double pm = p_abs_max(grid);
  const double ps = momentum_support(state);
  return kPi / std::max(8.0 * pm, 2.0 * (pm + ps));
}

WignerField wigner_direct(const CoefficientState& state, const PhaseSpaceGrid& grid,
                          const WignerOptions& options) {
  check_grid(state, grid);
  const double width = state.params().well_width();
  const double h = 0.5 * z_step_limit(state, grid);
  const std::size_t max_nodes = static_cast<std::size_t>(width / h) + 3;
  if (max_nodes * (2 * sizeof(cplx) + 3 * sizeof(double)) > options.memory_cap_bytes) {
    throw ResolutionError("direct Wigner quadrature exceeds the memory cap");
  }

  const EigenBasis basis(state.params(), state.n_max());
  const int nx = grid.nx();
  const int np = grid.np();
  RowMatrix values(nx, np);
  std::vector<double> z, w, xm, xp, buf(state.size());
  std::vector<cplx> chi_m, chi_p;
  std::vector<cplx> acc(np);
  const double p0 = grid.p_min();
  const double dp = grid.dp();

  for (int i = 0; i < nx; ++i) {
    const double x = grid.x(i);
    const double zmax = std::min(x, width - x);
    if (!(zmax > 0.0)) {
      values.row(i).setZero();
      continue;
    }
    simpson_nodes(zmax, h, z, w);
    xm.resize(z.size());
    xp.resize(z.size());
    for (std::size_t k = 0; k < z.size(); ++k) {
      xm[k] = x - z[k];
      xp[k] = x + z[k];
    }
    sample_state(state, basis, xm, chi_m, buf);
    sample_state(state, basis, xp, chi_p, buf);
    std::fill(acc.begin(), acc.end(), cplx{});
    for (std::size_t k = 0; k < z.size(); ++k) {
      const cplx f = w[k] * std::conj(chi_m[k]) * chi_p[k];
      if (f == cplx{}) continue;
      cplx ph = std::polar(1.0, -2.0 * p0 * z[k]);
      const cplx step = std::polar(1.0, -2.0 * dp * z[k]);
      for (int j = 0; j < np; ++j) {
        acc[j] += f * ph;
        ph *= step;
      }
    }
    for (int j = 0; j < np; ++j) values(i, j) = acc[j].real() / kPi;
  }
  return {grid, std::move(values), 0.0};
}

WignerField wigner_fast(const CoefficientState& state, const PhaseSpaceGrid& grid, const WignerOptions& options) {
  check_grid(state, grid);
  const int nx = grid.nx();
  const int np = grid.np();
  const double dx = grid.dx();
  const int m = std::max(1, static_cast<int>(std::ceil(dx / z_step_limit(state, grid))));
  const double h = dx / m;
  const long long fine = static_cast<long long>(nx - 1) * m + 1;
  const long long kmax = (fine - 1) / 2;
  const std::size_t nk = static_cast<std::size_t>(2 * kmax + 1);
  const std::size_t len = next_pow2(nk + np - 1);
  const std::size_t bytes = static_cast<std::size_t>(fine) * (sizeof(cplx) + sizeof(double)) +
                            len * 3 * sizeof(fftw_complex);
  if (bytes > options.memory_cap_bytes) {
    throw ResolutionError("fast Wigner transform exceeds the memory cap");
  }

  std::vector<double> xs(static_cast<std::size_t>(fine));
  for (long long q = 0; q < fine; ++q) xs[q] = q == fine - 1 ? grid.x_max() : grid.x_min() + q * h;
  const auto chi = position_wavefunction(state, xs);

  // Chirp-z: X_j = Σ_k a_k w^{jk}, w = e^{−2i dp h}, via jk = (j² + k² − (j−k)²)/2.
  const double dp = grid.dp();
  const double p0 = grid.p_min();
  auto kernel = fftw_buffer(len);
  auto work = fftw_buffer(len);
  Plan forward(fftw_plan_dft_1d(static_cast<int>(len), work.get(), work.get(), FFTW_FORWARD, FFTW_ESTIMATE));
  Plan backward(fftw_plan_dft_1d(static_cast<int>(len), work.get(), work.get(), FFTW_BACKWARD, FFTW_ESTIMATE));
  Plan kernel_plan(
      fftw_plan_dft_1d(static_cast<int>(len), kernel.get(), kernel.get(), FFTW_FORWARD, FFTW_ESTIMATE));

  for (std::size_t q = 0; q < len; ++q) kernel[q][0] = kernel[q][1] = 0.0;
  auto chirp = [&](long long k) {
    const double a = dp * h * static_cast<double>(k) * static_cast<double>(k);
    return cplx(std::cos(a), std::sin(a));
  };
  for (long long k = 0; k < np; ++k) {
    const cplx v = chirp(k);
    kernel[k][0] = v.real();
    kernel[k][1] = v.imag();
  }
  for (long long k = 1; k < static_cast<long long>(nk); ++k) {
    const cplx v = chirp(k);
    kernel[len - k][0] = v.real();
    kernel[len - k][1] = v.imag();
  }
  fftw_execute(kernel_plan.get());

  std::vector<cplx> pre(nk);
  for (std::size_t q = 0; q < nk; ++q) {
    const long long k = static_cast<long long>(q) - kmax;
    pre[q] = std::polar(1.0, -2.0 * p0 * static_cast<double>(k) * h) * std::conj(chirp(static_cast<long long>(q)));
  }
  std::vector<cplx> post(np);
  for (int j = 0; j < np; ++j) {
    const double a = dp * h * j * static_cast<double>(2 * kmax - j);
    post[j] = std::polar(h / (kPi * static_cast<double>(len)), a);
  }

  RowMatrix values(nx, np);
  double residue = 0.0;
  for (int i = 0; i < nx; ++i) {
    const long long c = static_cast<long long>(i) * m;
    const long long kr = std::min(c, fine - 1 - c);
    if (kr == 0) {
      values.row(i).setZero();
      continue;
    }
    for (std::size_t q = 0; q < len; ++q) work[q][0] = work[q][1] = 0.0;
    for (long long k = -kr; k <= kr; ++k) {
      const cplx f = std::conj(chi[c - k]) * chi[c + k] * pre[k + kmax];
      work[k + kmax][0] = f.real();
      work[k + kmax][1] = f.imag();
    }
    fftw_execute(forward.get());
    for (std::size_t q = 0; q < len; ++q) {
      const cplx a(work[q][0], work[q][1]);
      const cplx b(kernel[q][0], kernel[q][1]);
      const cplx ab = a * b;
      work[q][0] = ab.real();
      work[q][1] = ab.imag();
    }
    fftw_execute(backward.get());
    for (int j = 0; j < np; ++j) {
      const cplx val = cplx(work[j][0], work[j][1]) * post[j];
      values(i, j) = val.real();
      residue = std::max(residue, std::abs(val.imag()));
    }
  }
  return {grid, std::move(values), residue};
}

std::vector<double> wigner_section(const CoefficientState& state, std::span<const double> xs, double p) {
  const double width = state.params().well_width();
  const double support = momentum_support(state);
  const double h = 0.5 * kPi / std::max(8.0 * std::abs(p), 2.0 * (std::abs(p) + support));
  const EigenBasis basis(state.params(), state.n_max());
  std::vector<double> out(xs.size());
  std::vector<double> z, w, xm, xp, buf(state.size());
  std::vector<cplx> chi_m, chi_p;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    if (!(x >= 0.0 && x <= width)) throw DomainError("section sample outside the well");
    const double zmax = std::min(x, width - x);
    if (!(zmax > 0.0)) {
      out[i] = 0.0;
      continue;
    }
    simpson_nodes(zmax, h, z, w);
    xm.resize(z.size());
    xp.resize(z.size());
    for (std::size_t k = 0; k < z.size(); ++k) {
      xm[k] = x - z[k];
      xp[k] = x + z[k];
    }
    sample_state(state, basis, xm, chi_m, buf);
    sample_state(state, basis, xp, chi_p, buf);
    cplx acc{};
    for (std::size_t k = 0; k < z.size(); ++k) {
      acc += w[k] * std::conj(chi_m[k]) * chi_p[k] * std::polar(1.0, -2.0 * p * z[k]);
    }
    out[i] = acc.real() / kPi;
  }
  return out;
}

Marginals marginals(const WignerField& field) {
  const auto& g = field.grid();
  const auto wx = trapezoid_weights(g.nx(), g.dx());
  const auto wp = trapezoid_weights(g.np(), g.dp());
  Marginals out{std::vector<double>(g.nx(), 0.0), std::vector<double>(g.np(), 0.0)};
  for (int i = 0; i < g.nx(); ++i) {
    for (int j = 0; j < g.np(); ++j) {
      const double v = field(i, j);
      out.x_density[i] += wp[j] * v;
      out.p_density[j] += wx[i] * v;
    }
  }
  return out;
}

PhaseSpaceMoments moments(const WignerField& field) {
  const auto& g = field.grid();
  const auto wx = trapezoid_weights(g.nx(), g.dx());
  const auto wp = trapezoid_weights(g.np(), g.dp());
  double s0 = 0, sx = 0, sxx = 0, sp = 0, spp = 0;
  for (int i = 0; i < g.nx(); ++i) {
    const double x = g.x(i);
    for (int j = 0; j < g.np(); ++j) {
      const double p = g.p(j);
      const double v = wx[i] * wp[j] * field(i, j);
      s0 += v;
      sx += v * x;
      sxx += v * x * x;
      sp += v * p;
      spp += v * p * p;
    }
  }
  const double mx = sx / s0;
  const double mp = sp / s0;
  return {mx, mp, std::max(0.0, sxx / s0 - mx * mx), std::max(0.0, spp / s0 - mp * mp)};
}

}  // namespace ptw
