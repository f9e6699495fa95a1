#pragma once

// Numerical tolerances shared across the library. Values are part of the
// documented behavior: validation accepts exactly what these allow.
namespace steerkit::tol {

// Max-abs elementwise drift |m - m^dag| accepted by Hermitian constructors.
inline constexpr double hermitian_construct = 1e-12;

// Looser drift accepted by eigenvalue routines on raw matrices.
inline constexpr double hermitian_operate = 1e-9;

// Matrices count as positive semidefinite when min eigenvalue >= -psd_floor.
inline constexpr double psd_floor = 1e-9;

// |tr(m) - 1| accepted for normalized states.
inline constexpr double unit_trace = 1e-10;

// Max-abs tolerance for no-signaling and assemblage normalization checks.
inline constexpr double no_signaling = 1e-9;

// Max-abs tolerance for a local-hidden-state model to reproduce its assemblage.
inline constexpr double lhs_reconstruction = 1e-7;

// |sum_lambda tr(rho_lambda) - 1| accepted for a local-hidden-state model.
inline constexpr double lhs_total_weight = 1e-8;

// Default relative duality-gap target for the SDP solver.
inline constexpr double sdp_gap = 1e-8;

// Smallest user-selectable duality-gap target.
inline constexpr double sdp_gap_floor = 1e-10;

// Absolute feasibility target for SDP residuals.
inline constexpr double sdp_feasibility = 1e-9;

// Steering robustness below this certifies an unsteerable assemblage.
inline constexpr double unsteerable = 1e-6;

// Smallest singular value required of a spanning tomography set.
inline constexpr double tomo_spanning = 1e-8;

// Max residual accepted when expanding a witness over a tomography set.
inline constexpr double beta_reconstruction = 1e-10;

}  // namespace steerkit::tol
