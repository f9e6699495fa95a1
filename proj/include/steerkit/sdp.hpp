#pragma once

#include <map>
#include <string>
#include <vector>

#include "steerkit/hermitian.hpp"

namespace steerkit {

using RealMatrix = Eigen::MatrixXd;

// [[Re m, -Im m], [Im m, Re m]]. Ring homomorphism from complex to real
// matrices; Hermitian inputs map to symmetric outputs with every eigenvalue
// doubled in multiplicity, and tr(embed(a) embed(b)) = 2 Re tr(a b).
RealMatrix hermitian_to_real_embedding(const Matrix& m);

enum class SdpSense { Minimize, Maximize };
enum class SdpStatus { Optimal, Infeasible, NumericalFailure };

// One addend <coeff, X_block> of a linear functional over the block variables.
struct SdpTerm {
  int block;
  HermitianMatrix coeff;
};

struct SdpConstraint {
  std::vector<SdpTerm> terms;
  double rhs;
};

// Optimize sum_i <C_i, X_i> over Hermitian PSD blocks X_i subject to
// equality constraints sum <A_i, X_i> = b. Matrix inequalities are encoded
// by the caller with explicit slack blocks.
class SdpProblem {
 public:
  explicit SdpProblem(SdpSense sense = SdpSense::Minimize) : sense_(sense) {}

  int add_block(const std::string& id, int dim);
  void set_objective(int block, const HermitianMatrix& coeff);
  void add_constraint(std::vector<SdpTerm> terms, double rhs);

  SdpSense sense() const { return sense_; }
  int n_blocks() const { return static_cast<int>(dims_.size()); }
  int n_constraints() const { return static_cast<int>(constraints_.size()); }
  int block_dim(int i) const { return dims_[static_cast<std::size_t>(i)]; }
  const std::string& block_id(int i) const { return ids_[static_cast<std::size_t>(i)]; }
  const std::vector<std::pair<int, HermitianMatrix>>& objective() const {
    return objective_;
  }
  const std::vector<SdpConstraint>& constraints() const { return constraints_; }

 private:
  SdpSense sense_;
  std::vector<std::string> ids_;
  std::vector<int> dims_;
  std::vector<std::pair<int, HermitianMatrix>> objective_;
  std::vector<SdpConstraint> constraints_;
};

// One row of the iteration log, for diagnostics and duality monitoring.
struct SdpIterate {
  int iter;
  double mu, primal_obj, dual_obj, primal_infeas, dual_infeas;
};

struct SdpSolution {
  SdpStatus status = SdpStatus::NumericalFailure;
  double primal_value = 0;
  double dual_value = 0;
  double gap = 0;  // |primal - dual|
  std::map<std::string, HermitianMatrix> block_values;  // primal optimizers
  std::map<std::string, HermitianMatrix> dual_slacks;
  std::vector<double> dual_multipliers;
  std::vector<SdpIterate> trace;

  const HermitianMatrix& block(const std::string& id) const;
};

struct SdpOptions {
  double gap_tol = tol::sdp_gap;          // relative duality gap target
  double feas_tol = tol::sdp_feasibility; // absolute residual target
  int max_iterations = 200;
};

// Infeasible-start primal-dual interior-point method with Nesterov-Todd
// scaling, run on the real-symmetric embedding of the complex problem.
// Optimal status is only reported after the recovered complex blocks are
// re-verified as feasible for the original problem.
SdpSolution solve(const SdpProblem& p, const SdpOptions& opts = SdpOptions());

}  // namespace steerkit
