#pragma once

#include <random>
#include <vector>

#include "steerkit/werner.hpp"

// Seeded generators for property-test corpora. Everything funnels through a
// caller-owned std::mt19937_64 so runs are reproducible.
namespace testsupport {

using steerkit::Assemblage;
using steerkit::BetaGame;
using steerkit::Complex;
using steerkit::DensityMatrix;
using steerkit::HermitianMatrix;
using steerkit::Matrix;
using steerkit::Povm;
using steerkit::TomoSet;
using steerkit::Vector;
using steerkit::WitnessSet;

using Rng = std::mt19937_64;

// Independent standard complex Gaussian entries.
Matrix ginibre(int rows, int cols, Rng& rng);

// Haar-distributed unitary via QR of a Ginibre matrix.
Matrix haar_unitary(int d, Rng& rng);

// G G^dag / tr: Hilbert-Schmidt-distributed full-rank state.
DensityMatrix random_density_matrix(int d, Rng& rng);

// Rank-1 projective measurement in a Haar-random basis, d outcomes.
Povm random_projective_povm(int d, Rng& rng);

// Random two-qubit state (optionally pushed toward pure by mixing a Haar
// pure state with a Hilbert-Schmidt one) measured with random projective
// qubit POVMs: n_settings settings, 2 outcomes, Bob qubit.
Assemblage random_state_assemblage(int n_settings, Rng& rng,
                                   double purity_bias = 0.0);

// Unsteerable by construction: sigma(a|x) = sum_lambda D(a|x,lambda)
// rho_lambda with random PSD rho_lambda of total trace 1.
Assemblage random_lhs_assemblage(int n_settings, int n_outcomes, int dim,
                                 Rng& rng);

// Rejection-samples state assemblages until steering robustness > 1e-3.
Assemblage random_steerable_assemblage(int n_settings, Rng& rng);

// Random PSD operator with largest eigenvalue in (0, 1]: a valid POVM element
// on the doubled space when dim = d^2.
HermitianMatrix random_povm_element(int dim, Rng& rng);

// sum_i (A_i x B_i) phi+ (A_i x B_i)^dag scaled into 0 <= E <= 1: the
// maximally entangled projection degraded by a separable operation.
HermitianMatrix random_separable_degraded_element(int d, int n_terms, Rng& rng);

// Random valid game: random PSD witness elements scaled to local bound 1,
// expanded over the tomography set.
BetaGame random_valid_game(const TomoSet& tomo, int n_settings, int n_outcomes,
                           Rng& rng);

}  // namespace testsupport
