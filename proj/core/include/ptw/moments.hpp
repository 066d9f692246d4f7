#pragma once

#include <Eigen/Core>
#include <memory>

#include "ptw/coherent.hpp"
#include "ptw/params.hpp"
#include "ptw/wigner.hpp"

namespace ptw {

/// Position and momentum matrix elements over ψ_0 .. ψ_{n_max}, by quadrature.
///   X_mn  = ∫ ψ_m x ψ_n        X2_mn = ∫ ψ_m x² ψ_n
///   D_mn  = ∫ ψ_m ψ_n'  (p = −iD)
///   P2_mn = ∫ ψ_m' ψ_n' (= ⟨m|p²|n⟩, boundary terms vanish)
struct MomentOperators {
  MomentOperators(const PTParams& params, int n_max);

  PTParams params;
  int n_max;
  Eigen::MatrixXd x;
  Eigen::MatrixXd x2;
  Eigen::MatrixXd d;
  Eigen::MatrixXd p2;
};

/// Shared, lazily built operators for (params, n_max). Thread-safe.
std::shared_ptr<const MomentOperators> moment_operators(const PTParams& params, int n_max);

/// First and second moments from the coefficient vector.
PhaseSpaceMoments state_moments(const CoefficientState& state);

/// Δx·Δp of the state, from the coefficient basis.
double classical_action(const CoefficientState& state);

}  // namespace ptw
