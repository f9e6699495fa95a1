#pragma once

#include <optional>
#include <vector>

#include "steerkit/hermitian.hpp"
#include "steerkit/linalg.hpp"

namespace steerkit {

// Conditional states sigma(a|x) on Bob's side, indexed by Alice's setting
// x = 1..nSettings and outcome a = 1..nOutcomes. Elements are PSD, settings
// are non-signaling, and the reduced state has unit trace.
class Assemblage {
 public:
  // Elements in x-major order: index (x-1)*nOutcomes + (a-1).
  Assemblage(int n_settings, int n_outcomes, int dim,
             std::vector<HermitianMatrix> elements);

  int n_settings() const { return n_settings_; }
  int n_outcomes() const { return n_outcomes_; }
  int dim() const { return dim_; }

  const HermitianMatrix& at(int x, int a) const;  // 1-based
  const std::vector<HermitianMatrix>& elements() const { return elements_; }

  // sum_a sigma(a|1): Bob's reduced state.
  Matrix reduced_state() const;

 private:
  int n_settings_, n_outcomes_, dim_;
  std::vector<HermitianMatrix> elements_;
};

// Assignment of one outcome to every setting. Strategies are ordered by the
// encoding index sum_x (a_x - 1) * nOutcomes^(x-1), so x = 1 varies fastest.
struct DeterministicStrategy {
  std::vector<int> outcomes;  // outcomes[x-1] is the 1-based outcome at x

  int outcome(int x) const { return outcomes[static_cast<std::size_t>(x - 1)]; }
  // D(a|x,lambda): 1 when the strategy answers a at setting x.
  int response(int a, int x) const { return outcome(x) == a ? 1 : 0; }
  long encoding(int n_outcomes) const;
};

// All nOutcomes^nSettings strategies in encoding order. Counts above 1e6 are
// rejected with TooManyStrategiesError.
std::vector<DeterministicStrategy> enumerate_strategies(int n_settings,
                                                        int n_outcomes);

// Subnormalized hidden states rho_lambda, one per deterministic strategy,
// with total trace 1. Reproduces an assemblage via
// sigma(a|x) = sum_lambda D(a|x,lambda) rho_lambda.
class LhsModel {
 public:
  // states indexed by strategy encoding.
  LhsModel(int n_settings, int n_outcomes, int dim,
           std::vector<HermitianMatrix> states);

  int n_settings() const { return n_settings_; }
  int n_outcomes() const { return n_outcomes_; }
  int dim() const { return dim_; }
  const std::vector<HermitianMatrix>& states() const { return states_; }

  Matrix reconstruct(int x, int a) const;
  // Max-abs deviation from the given assemblage across all (x, a).
  double reconstruction_error(const Assemblage& target) const;

 private:
  int n_settings_, n_outcomes_, dim_;
  std::vector<HermitianMatrix> states_;
};

// Assemblage produced when Alice measures her share of `state` (dimensions
// dim_a * dim_b) with one POVM per setting: sigma(a|x) = tr_A[rho (E(a|x) x 1)].
Assemblage from_state_and_measurements(const DensityMatrix& state,
                                       const std::vector<Povm>& measurements,
                                       int dim_a);

struct UnsteerabilityResult {
  bool unsteerable = false;
  std::optional<LhsModel> model;  // certificate when unsteerable
};

// Decides membership in the unsteerable set by solving for the steering
// robustness; a value below tol::unsteerable yields a hidden-state model.
UnsteerabilityResult is_unsteerable(const Assemblage& a);

}  // namespace steerkit
