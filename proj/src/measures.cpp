#include "steerkit/measures.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <sstream>

namespace steerkit {

namespace {

constexpr double kNormalizationSlack = 1e-8;

std::string xa_id(const char* prefix, int x, int a) {
  return std::string(prefix) + ":" + std::to_string(x) + ":" + std::to_string(a);
}

// Hermitian basis of a d x d space: diagonal units, then symmetric and
// antisymmetric off-diagonal combinations. Spans all matrix equalities as
// d^2 scalar constraints.
std::vector<HermitianMatrix> hermitian_basis(int d) {
  std::vector<HermitianMatrix> basis;
  basis.reserve(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i) {
    Matrix e = Matrix::Zero(d, d);
    e(i, i) = 1;
    basis.emplace_back(e);
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      Matrix s = Matrix::Zero(d, d);
      s(i, j) = 1;
      s(j, i) = 1;
      basis.emplace_back(s);
      Matrix k = Matrix::Zero(d, d);
      k(i, j) = Complex(0, 1);
      k(j, i) = Complex(0, -1);
      basis.emplace_back(k);
    }
  }
  return basis;
}

double real_trace_product(const Matrix& a, const Matrix& b) {
  return (a * b).trace().real();
}

// Witness-side robustness program: maximize tr sum F sigma subject to
// sum_x F(lambda(x)|x) + S_lambda = 1 and F, S >= 0.
SdpProblem robustness_witness_program(const Assemblage& a) {
  const int d = a.dim();
  SdpProblem p(SdpSense::Maximize);
  std::vector<int> f_blocks(
      static_cast<std::size_t>(a.n_settings()) * a.n_outcomes());
  for (int x = 1; x <= a.n_settings(); ++x) {
    for (int aa = 1; aa <= a.n_outcomes(); ++aa) {
      const int idx = p.add_block(xa_id("F", x, aa), d);
      f_blocks[static_cast<std::size_t>(x - 1) * a.n_outcomes() + (aa - 1)] = idx;
      p.set_objective(idx, a.at(x, aa));
    }
  }
  const auto strategies = enumerate_strategies(a.n_settings(), a.n_outcomes());
  const auto basis = hermitian_basis(d);
  for (std::size_t l = 0; l < strategies.size(); ++l) {
    const int s_block = p.add_block("S:" + std::to_string(l), d);
    for (const HermitianMatrix& e : basis) {
      std::vector<SdpTerm> terms;
      for (int x = 1; x <= a.n_settings(); ++x) {
        const int aa = strategies[l].outcome(x);
        terms.push_back(SdpTerm{
            f_blocks[static_cast<std::size_t>(x - 1) * a.n_outcomes() + (aa - 1)],
            e});
      }
      terms.push_back(SdpTerm{s_block, e});
      p.add_constraint(std::move(terms), e.mat().trace().real());
    }
  }
  return p;
}

// Hidden-state-side robustness program: minimize sum tr rho_lambda subject to
// sum_lambda D(a|x,lambda) rho_lambda - T(a|x) = sigma(a|x), rho, T >= 0.
SdpProblem robustness_state_program(const Assemblage& a) {
  const int d = a.dim();
  SdpProblem p(SdpSense::Minimize);
  const auto strategies = enumerate_strategies(a.n_settings(), a.n_outcomes());
  std::vector<int> rho_blocks(strategies.size());
  const HermitianMatrix eye = HermitianMatrix::identity(d);
  for (std::size_t l = 0; l < strategies.size(); ++l) {
    rho_blocks[l] = p.add_block("rho:" + std::to_string(l), d);
    p.set_objective(rho_blocks[l], eye);
  }
  const auto basis = hermitian_basis(d);
  for (int x = 1; x <= a.n_settings(); ++x) {
    for (int aa = 1; aa <= a.n_outcomes(); ++aa) {
      const int t_block = p.add_block(xa_id("T", x, aa), d);
      for (const HermitianMatrix& e : basis) {
        std::vector<SdpTerm> terms;
        for (std::size_t l = 0; l < strategies.size(); ++l) {
          if (strategies[l].response(aa, x)) {
            terms.push_back(SdpTerm{rho_blocks[l], e});
          }
        }
        terms.push_back(SdpTerm{t_block, HermitianMatrix(-e.mat())});
        p.add_constraint(std::move(terms),
                         real_trace_product(e.mat(), a.at(x, aa).mat()));
      }
    }
  }
  return p;
}

// Hidden-state-side weight program: maximize the unsteerable weight
// sum tr rho_lambda subject to sum_lambda D rho_lambda + T(a|x) = sigma(a|x).
SdpProblem weight_state_program(const Assemblage& a) {
  const int d = a.dim();
  SdpProblem p(SdpSense::Maximize);
  const auto strategies = enumerate_strategies(a.n_settings(), a.n_outcomes());
  std::vector<int> rho_blocks(strategies.size());
  const HermitianMatrix eye = HermitianMatrix::identity(d);
  for (std::size_t l = 0; l < strategies.size(); ++l) {
    rho_blocks[l] = p.add_block("rho:" + std::to_string(l), d);
    p.set_objective(rho_blocks[l], eye);
  }
  const auto basis = hermitian_basis(d);
  for (int x = 1; x <= a.n_settings(); ++x) {
    for (int aa = 1; aa <= a.n_outcomes(); ++aa) {
      const int t_block = p.add_block(xa_id("T", x, aa), d);
      for (const HermitianMatrix& e : basis) {
        std::vector<SdpTerm> terms;
        for (std::size_t l = 0; l < strategies.size(); ++l) {
          if (strategies[l].response(aa, x)) {
            terms.push_back(SdpTerm{rho_blocks[l], e});
          }
        }
        terms.push_back(SdpTerm{t_block, e});
        p.add_constraint(std::move(terms),
                         real_trace_product(e.mat(), a.at(x, aa).mat()));
      }
    }
  }
  return p;
}

// Witness-side weight program: minimize tr sum F sigma subject to
// sum_x F(lambda(x)|x) - S_lambda = 1 and F, S >= 0.
SdpProblem weight_witness_program(const Assemblage& a) {
  const int d = a.dim();
  SdpProblem p(SdpSense::Minimize);
  std::vector<int> f_blocks(
      static_cast<std::size_t>(a.n_settings()) * a.n_outcomes());
  for (int x = 1; x <= a.n_settings(); ++x) {
    for (int aa = 1; aa <= a.n_outcomes(); ++aa) {
      const int idx = p.add_block(xa_id("F", x, aa), d);
      f_blocks[static_cast<std::size_t>(x - 1) * a.n_outcomes() + (aa - 1)] = idx;
      p.set_objective(idx, a.at(x, aa));
    }
  }
  const auto strategies = enumerate_strategies(a.n_settings(), a.n_outcomes());
  const auto basis = hermitian_basis(d);
  for (std::size_t l = 0; l < strategies.size(); ++l) {
    const int s_block = p.add_block("S:" + std::to_string(l), d);
    for (const HermitianMatrix& e : basis) {
      std::vector<SdpTerm> terms;
      for (int x = 1; x <= a.n_settings(); ++x) {
        const int aa = strategies[l].outcome(x);
        terms.push_back(SdpTerm{
            f_blocks[static_cast<std::size_t>(x - 1) * a.n_outcomes() + (aa - 1)],
            e});
      }
      terms.push_back(SdpTerm{s_block, HermitianMatrix(-e.mat())});
      p.add_constraint(std::move(terms), e.mat().trace().real());
    }
  }
  return p;
}

SdpSolution solve_or_throw(const SdpProblem& p, const SdpOptions& opts,
                           const char* what) {
  SdpSolution sol = solve(p, opts);
  if (sol.status == SdpStatus::Optimal) return sol;
  std::ostringstream os;
  os << what << ": solver "
     << (sol.status == SdpStatus::Infeasible ? "reported infeasibility"
                                             : "failed to converge");
  throw SolverError(os.str());
}

std::vector<HermitianMatrix> collect_witness(const SdpSolution& sol,
                                             const Assemblage& a) {
  std::vector<HermitianMatrix> f;
  f.reserve(static_cast<std::size_t>(a.n_settings()) * a.n_outcomes());
  for (int x = 1; x <= a.n_settings(); ++x) {
    for (int aa = 1; aa <= a.n_outcomes(); ++aa) {
      f.push_back(sol.block(xa_id("F", x, aa)));
    }
  }
  return f;
}

std::vector<HermitianMatrix> collect_states(const SdpSolution& sol, long count) {
  std::vector<HermitianMatrix> rho;
  rho.reserve(static_cast<std::size_t>(count));
  for (long l = 0; l < count; ++l) {
    rho.push_back(sol.block("rho:" + std::to_string(l)));
  }
  return rho;
}

void require_agreement(double lhs, double rhs, const char* what) {
  if (std::abs(lhs - rhs) > 1e-7) {
    std::ostringstream os;
    os << what << ": program optima disagree (" << lhs << " vs " << rhs << ")";
    throw SolverError(os.str());
  }
}

}  // namespace

WitnessSet::WitnessSet(int n_settings, int n_outcomes, int dim,
                       std::vector<HermitianMatrix> elements,
                       WitnessNormalization norm)
    : n_settings_(n_settings),
      n_outcomes_(n_outcomes),
      dim_(dim),
      elements_(std::move(elements)),
      norm_(norm) {
  if (n_settings_ < 1 || n_outcomes_ < 1 || dim_ < 1) {
    throw ValidationError("witness set needs nSettings, nOutcomes, dim >= 1");
  }
  const std::size_t expected =
      static_cast<std::size_t>(n_settings_) * static_cast<std::size_t>(n_outcomes_);
  if (elements_.size() != expected) {
    throw ValidationError("witness set holds " + std::to_string(elements_.size()) +
                          " elements, expected " + std::to_string(expected));
  }
  for (int x = 1; x <= n_settings_; ++x) {
    for (int a = 1; a <= n_outcomes_; ++a) {
      if (at(x, a).dim() != dim_) {
        std::ostringstream os;
        os << "witness element (x=" << x << ", a=" << a << ") has dim "
           << at(x, a).dim() << ", expected " << dim_;
        throw ValidationError(os.str());
      }
    }
  }
  if (norm_ == WitnessNormalization::Shifted) return;
  for (int x = 1; x <= n_settings_; ++x) {
    for (int a = 1; a <= n_outcomes_; ++a) {
      const double lo = min_eigenvalue(at(x, a));
      if (lo < -tol::psd_floor) {
        std::ostringstream os;
        os << "positivity violated at (x=" << x << ", a=" << a
           << "): eigenvalue " << lo;
        throw ValidationError(os.str());
      }
    }
  }
  for (const DeterministicStrategy& s :
       enumerate_strategies(n_settings_, n_outcomes_)) {
    const Matrix g = strategy_aggregate(s);
    if (norm_ == WitnessNormalization::SRdual) {
      const double hi = max_eigenvalue(g);
      if (hi > 1 + kNormalizationSlack) {
        std::ostringstream os;
        os << "strategy aggregate exceeds the local normalization: max eigenvalue "
           << hi;
        throw ValidationError(os.str());
      }
    } else {
      const double lo = min_eigenvalue(g);
      if (lo < 1 - kNormalizationSlack) {
        std::ostringstream os;
        os << "strategy aggregate falls below the local normalization: "
              "min eigenvalue "
           << lo;
        throw ValidationError(os.str());
      }
    }
  }
}

const HermitianMatrix& WitnessSet::at(int x, int a) const {
  if (x < 1 || x > n_settings_ || a < 1 || a > n_outcomes_) {
    throw IndexError("witness index (x=" + std::to_string(x) + ", a=" +
                     std::to_string(a) + ") out of range");
  }
  return elements_[static_cast<std::size_t>(x - 1) * n_outcomes_ + (a - 1)];
}

Matrix WitnessSet::strategy_aggregate(const DeterministicStrategy& s) const {
  Matrix g = Matrix::Zero(dim_, dim_);
  for (int x = 1; x <= n_settings_; ++x) g += at(x, s.outcome(x)).mat();
  return g;
}

double witness_value(const WitnessSet& f, const Assemblage& a) {
  if (f.n_settings() != a.n_settings() || f.n_outcomes() != a.n_outcomes() ||
      f.dim() != a.dim()) {
    throw DimensionError("witness shape does not match assemblage");
  }
  double value = 0;
  for (int x = 1; x <= a.n_settings(); ++x) {
    for (int aa = 1; aa <= a.n_outcomes(); ++aa) {
      value += (f.at(x, aa).mat() * a.at(x, aa).mat()).trace().real();
    }
  }
  return value;
}

double local_bound(const WitnessSet& f) {
  double best = -std::numeric_limits<double>::infinity();
  for (const DeterministicStrategy& s :
       enumerate_strategies(f.n_settings(), f.n_outcomes())) {
    best = std::max(best, max_eigenvalue(f.strategy_aggregate(s)));
  }
  return best;
}

std::vector<HermitianMatrix> shifted_witness(const WitnessSet& f, double alpha) {
  const Matrix shift =
      alpha / f.n_settings() * Matrix::Identity(f.dim(), f.dim());
  std::vector<HermitianMatrix> out;
  out.reserve(f.elements().size());
  for (const HermitianMatrix& e : f.elements()) {
    out.emplace_back(e.mat() - shift);
  }
  return out;
}

RobustnessResult steering_robustness(const Assemblage& a, const SdpOptions& opts) {
  const SdpSolution witness_side =
      solve_or_throw(robustness_witness_program(a), opts, "steering robustness");
  const SdpSolution state_side =
      solve_or_throw(robustness_state_program(a), opts, "steering robustness");
  require_agreement(witness_side.primal_value, state_side.primal_value,
                    "steering robustness");
  const long n_strategies =
      static_cast<long>(enumerate_strategies(a.n_settings(), a.n_outcomes()).size());
  RobustnessResult r{
      std::max(witness_side.primal_value - 1.0, 0.0),
      state_side.primal_value,
      witness_side.primal_value,
      WitnessSet(a.n_settings(), a.n_outcomes(), a.dim(),
                 collect_witness(witness_side, a), WitnessNormalization::SRdual),
      collect_states(state_side, n_strategies)};
  return r;
}

WeightResult steerable_weight(const Assemblage& a, const SdpOptions& opts) {
  const SdpSolution state_side =
      solve_or_throw(weight_state_program(a), opts, "steerable weight");
  const SdpSolution witness_side =
      solve_or_throw(weight_witness_program(a), opts, "steerable weight");
  require_agreement(state_side.primal_value, witness_side.primal_value,
                    "steerable weight");
  const double w = std::min(std::max(state_side.primal_value, 0.0), 1.0);
  WeightResult r{1.0 - w, state_side.primal_value, witness_side.primal_value,
                 WitnessSet(a.n_settings(), a.n_outcomes(), a.dim(),
                            collect_witness(witness_side, a),
                            WitnessNormalization::SWdual)};
  return r;
}

FractionResult steering_fraction(const Assemblage& a, const SdpOptions& opts) {
  RobustnessResult rr = steering_robustness(a, opts);
  const double alpha = local_bound(rr.witness);
  if (alpha <= 0) {
    throw SolverError("steering fraction: optimal witness has non-positive "
                      "local bound");
  }
  const double ratio = witness_value(rr.witness, a) / alpha;
  FractionResult fr{std::max(ratio - 1.0, 0.0), rr.value, std::move(rr.witness)};
  return fr;
}

UnsteerabilityResult is_unsteerable(const Assemblage& a) {
  RobustnessResult rr = steering_robustness(a);
  UnsteerabilityResult out;
  out.unsteerable = rr.value < tol::unsteerable;
  if (!out.unsteerable) return out;
  // At zero robustness the hidden-state optimizer is itself a model; rescale
  // away the residual trace excess.
  double total = 0;
  for (const HermitianMatrix& h : rr.hidden_states) {
    total += h.mat().trace().real();
  }
  if (total <= 0) return out;
  std::vector<HermitianMatrix> scaled;
  scaled.reserve(rr.hidden_states.size());
  for (const HermitianMatrix& h : rr.hidden_states) {
    scaled.emplace_back(h.mat() / total);
  }
  out.model.emplace(a.n_settings(), a.n_outcomes(), a.dim(), std::move(scaled));
  return out;
}

}  // namespace steerkit
