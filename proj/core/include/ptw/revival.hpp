#pragma once

#include <span>
#include <vector>

#include "ptw/coherent.hpp"
#include "ptw/fractional_time.hpp"

namespace ptw {

/// Linear-in-n evolution only: c_n ↦ c_n e^{−2πi n t/T_cl}.
CoefficientState classical_packet(const CoefficientState& state0, double t);

/// min over φ of ‖a − e^{iφ} b‖ (zero-padding the shorter vector).
double phase_aligned_residual(const CoefficientState& a, const CoefficientState& b);

/// Residual of the two-way split at T_rev/4 against
/// (e^{−iπ/4} χ(x) + e^{iπ/4} χ(π/(2α) − x))/√2.
/// PreconditionError unless ρ = κ are both even integers.
double cat_identity_residual(const CoefficientState& state0);

/// Which side the quarter-revival split lands on.
enum class EvenOddBranch { EtaMultipleOf4, EtaTwiceOdd };

struct EvenOddResult {
  EvenOddBranch branch;
  double residual;
};

/// Residual of evolve(state0, T_rev/4) against χ_e − iχ_o (η ≡ 0 mod 4) or
/// −iχ_e + χ_o (η ≡ 2 mod 4). PreconditionError unless η is an even integer.
EvenOddResult even_odd_split(const CoefficientState& state0);

/// Residual of the four-way split at T_rev/8 against
/// ½(e^{−iπ/4}χ_cl(t) + χ_cl(t+T_cl/4) − e^{−iπ/4}χ_cl(t+T_cl/2) + χ_cl(t+3T_cl/4)),
/// t = T_rev/8. PreconditionError unless η is an integer.
double compass_identity_residual(const CoefficientState& state0);

struct CloneDecomposition {
  std::vector<cplx> amplitudes;     // a_p, p = 0..l−1
  std::vector<double> phase_offsets;  // (p + δ)/l in units of T_cl, δ = ½ for s ≡ 2 (mod 4), else 0
  double residual;                  // ‖ψ(t) − Σ a_p χ_cl(t + offset_p T_cl)‖
};

/// Least-squares fit of evolve(state0, frac) onto the l classical packets
/// χ_cl(t + offset_p T_cl). PreconditionError for non-integer η; ConvergenceError
/// when the packets are numerically collinear.
CloneDecomposition clone_decomposition(const CoefficientState& state0, FractionalTime frac);

/// Connected regions of |χ(x)|² above `level`·max on a uniform grid of the well.
int density_lobe_count(const CoefficientState& state, int samples = 4096, double level = 0.1);

}  // namespace ptw
