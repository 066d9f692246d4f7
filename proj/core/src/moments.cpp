#include "ptw/moments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "ptw/spectrum.hpp"

namespace ptw {

MomentOperators::MomentOperators(const PTParams& p, int n)
    : params(p), n_max(n) {
  const int count = std::max(4096, 64 * (n_max + 1));
  const double width = params.well_width();
  const double h = width / count;
  std::vector<double> xs(count + 1);
  for (int i = 0; i <= count; ++i) xs[i] = i == count ? width : i * h;
  const EigenBasis basis(params, n_max);
  const Eigen::MatrixXd psi = basis.table(xs);
  const Eigen::MatrixXd dpsi = basis.derivative_table(xs);
  // Trapezoid weights; the end samples vanish so only the interior contributes.
  Eigen::VectorXd w = Eigen::VectorXd::Constant(count + 1, h);
  w(0) = w(count) = 0.5 * h;
  Eigen::VectorXd xv = Eigen::Map<const Eigen::VectorXd>(xs.data(), count + 1);

  const Eigen::MatrixXd psi_w = psi * w.asDiagonal();
  x = psi_w * xv.asDiagonal() * psi.transpose();
  x2 = psi_w * xv.cwiseAbs2().asDiagonal() * psi.transpose();
  d = psi_w * dpsi.transpose();
  p2 = dpsi * w.asDiagonal() * dpsi.transpose();
}

std::shared_ptr<const MomentOperators> moment_operators(const PTParams& params, int n_max) {
  using Key = std::tuple<double, double, double, int>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const MomentOperators>> cache;
  const Key key{params.rho(), params.kappa(), params.alpha(), n_max};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto ops = std::make_shared<const MomentOperators>(params, n_max);
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(ops)).first->second;
}

PhaseSpaceMoments state_moments(const CoefficientState& state) {
  const auto ops = moment_operators(state.params(), state.n_max());
  const Eigen::VectorXcd c = Eigen::Map<const Eigen::VectorXcd>(state.coeffs().data(), state.size());
  const double nrm = c.squaredNorm();
  const double mx = c.dot(ops->x.cast<cplx>() * c).real() / nrm;
  const double mxx = c.dot(ops->x2.cast<cplx>() * c).real() / nrm;
  // ⟨p⟩ = Σ c_m* (−i D_mn) c_n
  const double mp = (cplx(0, -1) * c.dot(ops->d.cast<cplx>() * c)).real() / nrm;
  const double mpp = c.dot(ops->p2.cast<cplx>() * c).real() / nrm;
  return {mx, mp, std::max(0.0, mxx - mx * mx), std::max(0.0, mpp - mp * mp)};
}

double classical_action(const CoefficientState& state) {
  const auto m = state_moments(state);
  return std::sqrt(m.var_x * m.var_p);
}

}  // namespace ptw
