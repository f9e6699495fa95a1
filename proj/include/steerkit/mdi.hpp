#pragma once

#include "steerkit/assemblage.hpp"
#include "steerkit/measures.hpp"

namespace steerkit {

// Ordered list of tomographically complete input states: the transposed
// states must span the full real space of d x d Hermitian matrices.
class TomoSet {
 public:
  TomoSet(int dim, std::vector<DensityMatrix> states);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(states_.size()); }
  const DensityMatrix& state(int y) const;  // 1-based
  const std::vector<DensityMatrix>& states() const { return states_; }

 private:
  int dim_;
  std::vector<DensityMatrix> states_;
};

// Six Pauli eigenstates ordered X+, X-, Z+, Z-, Y+, Y-.
TomoSet pauli_tomo_set();

// Minimal spanning set of d^2 pure states: the d basis projectors, then for
// each pair j < k the projectors onto (|j> + |k>)/sqrt(2) and
// (|j> + i|k>)/sqrt(2).
TomoSet qudit_tomo_set(int d);

// Game coefficients beta(x,a,y) over a tomography set. A validated game
// reconstructs a PSD witness element sum_y beta(x,a,y) * transpose(omega_y)
// for every (x,a); construction with check_psd = false admits shifted-witness
// tables whose reconstructions may be indefinite.
class BetaGame {
 public:
  BetaGame(TomoSet tomo, int n_settings, int n_outcomes,
           std::vector<double> beta, bool check_psd = true);

  int n_settings() const { return n_settings_; }
  int n_outcomes() const { return n_outcomes_; }
  int tomo_size() const { return tomo_.size(); }
  const TomoSet& tomo() const { return tomo_; }

  double beta(int x, int a, int y) const;  // 1-based throughout
  const std::vector<double>& coefficients() const { return beta_; }

  // sum_y beta(x,a,y) * transpose(omega_y).
  Matrix reconstruct(int x, int a) const;

 private:
  std::size_t index(int x, int a, int y) const;

  TomoSet tomo_;
  int n_settings_, n_outcomes_;
  std::vector<double> beta_;
};

// Click probabilities p(a, b=1 | x, omega_y), entries in [0, 1].
class CorrelationTable {
 public:
  CorrelationTable(int n_settings, int n_outcomes, int tomo_size,
                   std::vector<double> p);

  int n_settings() const { return n_settings_; }
  int n_outcomes() const { return n_outcomes_; }
  int tomo_size() const { return tomo_size_; }

  double at(int x, int a, int y) const;  // 1-based
  const std::vector<double>& values() const { return p_; }

 private:
  std::size_t index(int x, int a, int y) const;

  int n_settings_, n_outcomes_, tomo_size_;
  std::vector<double> p_;
};

// Expand a witness over the tomography set by minimum-norm least squares.
BetaGame beta_from_witness(const WitnessSet& f, const TomoSet& tomo);

// Simulate the b=1 branch: p(a,1|x,omega_y) = tr[E1 (sigma(a|x) x omega_y)]
// for a joint measurement element 0 <= E1 <= 1 on the doubled space.
CorrelationTable correlations(const Assemblage& a, const HermitianMatrix& e1,
                              const TomoSet& tomo);

// I = sum_{a,x,y} beta(x,a,y) p(a,1|x,omega_y).
double payoff(const CorrelationTable& p, const BetaGame& g);

// Best payoff reachable by unsteerable assemblages under the
// maximally-entangled measurement: (1/d) max_lambda max_eig of the
// strategy-aggregated reconstruction.
double lhs_payoff_bound(const BetaGame& g);

// Same bound when Bob measures an arbitrary element e1 instead: the
// per-strategy operator becomes tr_2[E1 (1 x transpose(G_lambda))].
double lhs_payoff_bound(const BetaGame& g, const HermitianMatrix& e1);

// payoff / lhs_payoff_bound: certified from the data table and the game
// alone, values above 1 witness steering.
double mdi_ratio(const CorrelationTable& p, const BetaGame& g);

// Full pipeline: optimal witness, beta expansion, simulated correlations
// under the maximally entangled projection, then max{ratio - 1, 0}.
double mdi_measure(const Assemblage& a, const TomoSet& tomo,
                   const SdpOptions& opts = SdpOptions());
double mdi_measure(const Assemblage& a);  // default tomography set for dim

// Uniform detection efficiency: every entry scaled by eta in [0, 1].
CorrelationTable apply_loss(const CorrelationTable& p, double eta);

}  // namespace steerkit
