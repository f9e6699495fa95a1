#pragma once

#include "steerkit/mdi.hpp"

namespace steerkit {

// v * singlet + (1 - v) * maximally mixed on two qubits, v in [0, 1].
DensityMatrix werner_state(double v);

// Assemblage from Alice measuring her half of werner_state(v) in the X basis
// (setting 1) and the Z basis (setting 2). Outcome a = 1 carries the -n
// projector, so Bob's conditional states align with +n: sigma(1|x) =
// (1 + v pauli_x) / 4.
Assemblage werner_assemblage(double v);

// The closed-form optimal witness for the family: F(a|x) =
// [1 +- pauli_x] / (2 + sqrt(2)), + for a = 1. SRdual-normalized with
// local bound exactly 1; witness value (1+v)(2-sqrt(2)) on werner_assemblage(v).
WitnessSet analytic_witness();

// Coefficient table over pauli_tomo_set() holding the analytic witness with a
// single entry 2/(2+sqrt(2)) per (x,a), at y = 1..4 in order.
BetaGame werner_beta_game();

// A different valid table for the same witness: the X-setting rows keep one
// entry each, while the Z-setting rows spread across all four X/Z states with
// weights +-1/(2+sqrt(2)). Demonstrates beta non-uniqueness.
BetaGame werner_beta_game_alternate();

struct SweepRow {
  double v;
  double s_mdi;
  double robustness;
  double abs_diff;  // |s_mdi - robustness|
};

// Per grid point: the full data-table pipeline value (optimal witness -> beta
// -> simulated correlations -> payoff ratio) and the steering robustness.
// Rows come back sorted by v. Parallelism across points is capped by the
// STEERKIT_THREADS environment variable (default: logical cores); the output
// is independent of the thread count.
std::vector<SweepRow> visibility_sweep(const std::vector<double>& grid,
                                       const TomoSet& tomo);
std::vector<SweepRow> visibility_sweep(const std::vector<double>& grid);

}  // namespace steerkit
