#pragma once

#include "steerkit/assemblage.hpp"
#include "steerkit/sdp.hpp"

namespace steerkit {

enum class WitnessNormalization { SRdual, SWdual, Shifted };

// Steering witness elements F(a|x) on Bob's space. SRdual witnesses obey
// max_eig(sum_x F(lambda(x)|x)) <= 1 for every deterministic strategy and
// certify steering through values above 1; SWdual witnesses obey the mirror
// bound min_eig >= 1. Shifted sets carry no positivity requirement.
class WitnessSet {
 public:
  // Elements in x-major order, as in Assemblage.
  WitnessSet(int n_settings, int n_outcomes, int dim,
             std::vector<HermitianMatrix> elements, WitnessNormalization norm);

  int n_settings() const { return n_settings_; }
  int n_outcomes() const { return n_outcomes_; }
  int dim() const { return dim_; }
  WitnessNormalization normalization() const { return norm_; }

  const HermitianMatrix& at(int x, int a) const;  // 1-based
  const std::vector<HermitianMatrix>& elements() const { return elements_; }

  // sum_x F(lambda(x)|x) for one deterministic strategy.
  Matrix strategy_aggregate(const DeterministicStrategy& s) const;

 private:
  int n_settings_, n_outcomes_, dim_;
  std::vector<HermitianMatrix> elements_;
  WitnessNormalization norm_;
};

// tr sum_{a,x} F(a|x) sigma(a|x): the witness functional on an assemblage.
double witness_value(const WitnessSet& f, const Assemblage& a);

// max over deterministic strategies of the largest eigenvalue of the
// strategy aggregate; the best value unsteerable assemblages can reach.
double local_bound(const WitnessSet& f);

// F(a|x) - alpha/nSettings * identity; drops the positivity normalization so
// unsteerable assemblages score <= 0.
std::vector<HermitianMatrix> shifted_witness(const WitnessSet& f, double alpha);

struct RobustnessResult {
  double value = 0;                 // the robustness itself, >= 0
  double state_program_value = 0;   // optimum of the hidden-state search
  double witness_program_value = 0; // optimum of the witness search
  WitnessSet witness;
  std::vector<HermitianMatrix> hidden_states;  // by strategy encoding
};

// Minimal noise weight t such that (sigma + t * tau)/(1 + t) is unsteerable
// for some assemblage tau. Both the witness-side and hidden-state-side
// programs are solved; their agreement is the correctness gate.
RobustnessResult steering_robustness(const Assemblage& a,
                                     const SdpOptions& opts = SdpOptions());

struct WeightResult {
  double value = 0;                 // 1 - maximal unsteerable weight
  double state_program_value = 0;   // maximal unsteerable weight itself
  double witness_program_value = 0;
  WitnessSet witness;
};

// Minimal weight of a steerable part in any split
// sigma = (1-w) * unsteerable + w * arbitrary.
WeightResult steerable_weight(const Assemblage& a,
                              const SdpOptions& opts = SdpOptions());

struct FractionResult {
  double value = 0;       // quantum-to-local payoff ratio minus one
  double robustness = 0;  // equals value up to solver tolerance
  WitnessSet witness;
};

// Best-case payoff ratio against the local bound. Equal to the steering
// robustness; evaluated here through the ratio arithmetic on the optimal
// witness as an independent path.
FractionResult steering_fraction(const Assemblage& a,
                                 const SdpOptions& opts = SdpOptions());

}  // namespace steerkit
