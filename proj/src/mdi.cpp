#include "steerkit/mdi.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <sstream>

namespace steerkit {

namespace {

// Coordinates of a Hermitian matrix in an orthonormal real basis: diagonal
// entries, then sqrt(2) * (Re, Im) of each upper off-diagonal entry.
Eigen::VectorXd hermitian_coords(const Matrix& m) {
  const int d = static_cast<int>(m.rows());
  Eigen::VectorXd v(d * d);
  int k = 0;
  for (int i = 0; i < d; ++i) v(k++) = m(i, i).real();
  const double r2 = std::sqrt(2.0);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      v(k++) = r2 * m(i, j).real();
      v(k++) = r2 * m(i, j).imag();
    }
  }
  return v;
}

Eigen::MatrixXd tomo_coordinate_stack(const TomoSet& tomo) {
  const int d = tomo.dim();
  Eigen::MatrixXd stack(tomo.size(), d * d);
  for (int y = 1; y <= tomo.size(); ++y) {
    stack.row(y - 1) = hermitian_coords(tomo.state(y).mat().transpose());
  }
  return stack;
}

Matrix qubit_projector(const Eigen::Vector2cd& psi) {
  return psi * psi.adjoint();
}

}  // namespace

TomoSet::TomoSet(int dim, std::vector<DensityMatrix> states)
    : dim_(dim), states_(std::move(states)) {
  if (dim_ < 2) throw DimensionError("tomography set needs dim >= 2");
  if (static_cast<int>(states_.size()) < dim_ * dim_) {
    throw RankDeficientError("tomography set has " +
                             std::to_string(states_.size()) + " states, needs " +
                             std::to_string(dim_ * dim_));
  }
  for (std::size_t y = 0; y < states_.size(); ++y) {
    if (states_[y].dim() != dim_) {
      throw DimensionError("tomography state " + std::to_string(y + 1) +
                           " has dim " + std::to_string(states_[y].dim()) +
                           ", expected " + std::to_string(dim_));
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(tomo_coordinate_stack(*this));
  const double smallest = svd.singularValues().minCoeff();
  if (smallest <= tol::tomo_spanning) {
    std::ostringstream os;
    os << "tomography set does not span the Hermitian space: smallest singular "
          "value "
       << smallest;
    throw RankDeficientError(os.str());
  }
}

const DensityMatrix& TomoSet::state(int y) const {
  if (y < 1 || y > size()) {
    throw IndexError("tomography index " + std::to_string(y) + " out of range 1.." +
                     std::to_string(size()));
  }
  return states_[static_cast<std::size_t>(y - 1)];
}

TomoSet pauli_tomo_set() {
  const double s = 1.0 / std::sqrt(2.0);
  const Complex i(0, 1);
  std::vector<DensityMatrix> states;
  states.emplace_back(qubit_projector({s, s}));        // X+
  states.emplace_back(qubit_projector({s, -s}));       // X-
  states.emplace_back(qubit_projector({1, 0}));        // Z+
  states.emplace_back(qubit_projector({0, 1}));        // Z-
  states.emplace_back(qubit_projector({s, i * s}));    // Y+
  states.emplace_back(qubit_projector({s, -i * s}));   // Y-
  return TomoSet(2, std::move(states));
}

TomoSet qudit_tomo_set(int d) {
  if (d < 2) throw DimensionError("qudit_tomo_set needs d >= 2");
  std::vector<DensityMatrix> states;
  states.reserve(static_cast<std::size_t>(d) * d);
  for (int j = 0; j < d; ++j) {
    Vector psi = Vector::Zero(d);
    psi(j) = 1;
    states.emplace_back(Matrix(psi * psi.adjoint()));
  }
  const double s = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      Vector plus = Vector::Zero(d);
      plus(j) = s;
      plus(k) = s;
      states.emplace_back(Matrix(plus * plus.adjoint()));
      Vector phase = Vector::Zero(d);
      phase(j) = s;
      phase(k) = Complex(0, 1) * s;
      states.emplace_back(Matrix(phase * phase.adjoint()));
    }
  }
  return TomoSet(d, std::move(states));
}

BetaGame::BetaGame(TomoSet tomo, int n_settings, int n_outcomes,
                   std::vector<double> beta, bool check_psd)
    : tomo_(std::move(tomo)), n_settings_(n_settings), n_outcomes_(n_outcomes),
      beta_(std::move(beta)) {
  if (n_settings_ < 1 || n_outcomes_ < 1) {
    throw ValidationError("game needs nSettings, nOutcomes >= 1");
  }
  const std::size_t expected = static_cast<std::size_t>(n_settings_) *
                               n_outcomes_ * static_cast<std::size_t>(tomo_.size());
  if (beta_.size() != expected) {
    throw ValidationError("game holds " + std::to_string(beta_.size()) +
                          " coefficients, expected " + std::to_string(expected));
  }
  for (double b : beta_) {
    if (!std::isfinite(b)) throw ValidationError("game coefficient is not finite");
  }
  if (!check_psd) return;
  for (int x = 1; x <= n_settings_; ++x) {
    for (int a = 1; a <= n_outcomes_; ++a) {
      const double lo = min_eigenvalue(reconstruct(x, a));
      if (lo < -tol::psd_floor) {
        std::ostringstream os;
        os << "game reconstruction at (x=" << x << ", a=" << a
           << ") is not PSD: eigenvalue " << lo;
        throw ValidationError(os.str());
      }
    }
  }
}

std::size_t BetaGame::index(int x, int a, int y) const {
  if (x < 1 || x > n_settings_ || a < 1 || a > n_outcomes_ || y < 1 ||
      y > tomo_.size()) {
    throw IndexError("game index (x=" + std::to_string(x) + ", a=" +
                     std::to_string(a) + ", y=" + std::to_string(y) +
                     ") out of range");
  }
  return (static_cast<std::size_t>(x - 1) * n_outcomes_ + (a - 1)) *
             static_cast<std::size_t>(tomo_.size()) +
         static_cast<std::size_t>(y - 1);
}

double BetaGame::beta(int x, int a, int y) const { return beta_[index(x, a, y)]; }

Matrix BetaGame::reconstruct(int x, int a) const {
  Matrix f = Matrix::Zero(tomo_.dim(), tomo_.dim());
  for (int y = 1; y <= tomo_.size(); ++y) {
    f += beta(x, a, y) * tomo_.state(y).mat().transpose();
  }
  return f;
}

CorrelationTable::CorrelationTable(int n_settings, int n_outcomes, int tomo_size,
                                   std::vector<double> p)
    : n_settings_(n_settings), n_outcomes_(n_outcomes), tomo_size_(tomo_size),
      p_(std::move(p)) {
  if (n_settings_ < 1 || n_outcomes_ < 1 || tomo_size_ < 1) {
    throw ValidationError("correlation table needs positive index ranges");
  }
  const std::size_t expected = static_cast<std::size_t>(n_settings_) *
                               n_outcomes_ * static_cast<std::size_t>(tomo_size_);
  if (p_.size() != expected) {
    throw ValidationError("correlation table holds " + std::to_string(p_.size()) +
                          " entries, expected " + std::to_string(expected));
  }
  for (double& v : p_) {
    if (!std::isfinite(v) || v < -tol::psd_floor || v > 1 + tol::psd_floor) {
      throw ValidationError("correlation entry " + std::to_string(v) +
                            " outside [0, 1]");
    }
    v = std::min(std::max(v, 0.0), 1.0);
  }
}

std::size_t CorrelationTable::index(int x, int a, int y) const {
  if (x < 1 || x > n_settings_ || a < 1 || a > n_outcomes_ || y < 1 ||
      y > tomo_size_) {
    throw IndexError("correlation index (x=" + std::to_string(x) + ", a=" +
                     std::to_string(a) + ", y=" + std::to_string(y) +
                     ") out of range");
  }
  return (static_cast<std::size_t>(x - 1) * n_outcomes_ + (a - 1)) *
             static_cast<std::size_t>(tomo_size_) +
         static_cast<std::size_t>(y - 1);
}

double CorrelationTable::at(int x, int a, int y) const { return p_[index(x, a, y)]; }

BetaGame beta_from_witness(const WitnessSet& f, const TomoSet& tomo) {
  if (f.dim() != tomo.dim()) {
    throw DimensionError("witness dim " + std::to_string(f.dim()) +
                         " does not match tomography dim " +
                         std::to_string(tomo.dim()));
  }
  const Eigen::MatrixXd stack = tomo_coordinate_stack(tomo);
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(
      stack.transpose());  // columns are the state coordinates
  std::vector<double> beta(static_cast<std::size_t>(f.n_settings()) *
                           f.n_outcomes() * static_cast<std::size_t>(tomo.size()));
  std::size_t k = 0;
  for (int x = 1; x <= f.n_settings(); ++x) {
    for (int a = 1; a <= f.n_outcomes(); ++a) {
      const Eigen::VectorXd target = hermitian_coords(f.at(x, a).mat());
      const Eigen::VectorXd row = cod.solve(target);
      const double residual = (stack.transpose() * row - target).cwiseAbs().maxCoeff();
      if (residual > tol::beta_reconstruction) {
        std::ostringstream os;
        os << "witness element (x=" << x << ", a=" << a
           << ") is not spanned by the tomography set: residual " << residual;
        throw RankDeficientError(os.str());
      }
      for (int y = 0; y < tomo.size(); ++y) beta[k++] = row(y);
    }
  }
  return BetaGame(tomo, f.n_settings(), f.n_outcomes(), std::move(beta),
                  f.normalization() != WitnessNormalization::Shifted);
}

CorrelationTable correlations(const Assemblage& a, const HermitianMatrix& e1,
                              const TomoSet& tomo) {
  const int d = a.dim();
  if (tomo.dim() != d) {
    throw DimensionError("tomography dim " + std::to_string(tomo.dim()) +
                         " does not match assemblage dim " + std::to_string(d));
  }
  if (e1.dim() != d * d) {
    throw DimensionError("joint measurement element has dim " +
                         std::to_string(e1.dim()) + ", expected " +
                         std::to_string(d * d));
  }
  if (min_eigenvalue(e1) < -tol::psd_floor ||
      max_eigenvalue(e1) > 1 + tol::psd_floor) {
    throw ValidationError("joint measurement element must satisfy 0 <= E1 <= 1");
  }
  std::vector<double> p;
  p.reserve(static_cast<std::size_t>(a.n_settings()) * a.n_outcomes() *
            static_cast<std::size_t>(tomo.size()));
  for (int x = 1; x <= a.n_settings(); ++x) {
    for (int aa = 1; aa <= a.n_outcomes(); ++aa) {
      for (int y = 1; y <= tomo.size(); ++y) {
        const Matrix joint = tensor(a.at(x, aa).mat(), tomo.state(y).mat());
        p.push_back((e1.mat() * joint).trace().real());
      }
    }
  }
  return CorrelationTable(a.n_settings(), a.n_outcomes(), tomo.size(),
                          std::move(p));
}

double payoff(const CorrelationTable& p, const BetaGame& g) {
  if (p.n_settings() != g.n_settings() || p.n_outcomes() != g.n_outcomes() ||
      p.tomo_size() != g.tomo_size()) {
    throw IndexError("correlation table and game have mismatched index ranges");
  }
  double total = 0;
  for (int x = 1; x <= p.n_settings(); ++x) {
    for (int a = 1; a <= p.n_outcomes(); ++a) {
      for (int y = 1; y <= p.tomo_size(); ++y) {
        total += g.beta(x, a, y) * p.at(x, a, y);
      }
    }
  }
  return total;
}

double lhs_payoff_bound(const BetaGame& g) {
  const int d = g.tomo().dim();
  std::vector<Matrix> rec;
  rec.reserve(static_cast<std::size_t>(g.n_settings()) * g.n_outcomes());
  for (int x = 1; x <= g.n_settings(); ++x) {
    for (int a = 1; a <= g.n_outcomes(); ++a) rec.push_back(g.reconstruct(x, a));
  }
  double best = -std::numeric_limits<double>::infinity();
  for (const DeterministicStrategy& s :
       enumerate_strategies(g.n_settings(), g.n_outcomes())) {
    Matrix agg = Matrix::Zero(d, d);
    for (int x = 1; x <= g.n_settings(); ++x) {
      agg += rec[static_cast<std::size_t>(x - 1) * g.n_outcomes() +
                 (s.outcome(x) - 1)];
    }
    best = std::max(best, max_eigenvalue(agg));
  }
  return best / d;
}

double lhs_payoff_bound(const BetaGame& g, const HermitianMatrix& e1) {
  const int d = g.tomo().dim();
  if (e1.dim() != d * d) {
    throw DimensionError("joint measurement element has dim " +
                         std::to_string(e1.dim()) + ", expected " +
                         std::to_string(d * d));
  }
  std::vector<Matrix> rec;
  rec.reserve(static_cast<std::size_t>(g.n_settings()) * g.n_outcomes());
  for (int x = 1; x <= g.n_settings(); ++x) {
    for (int a = 1; a <= g.n_outcomes(); ++a) rec.push_back(g.reconstruct(x, a));
  }
  const Matrix eye = Matrix::Identity(d, d);
  double best = -std::numeric_limits<double>::infinity();
  for (const DeterministicStrategy& s :
       enumerate_strategies(g.n_settings(), g.n_outcomes())) {
    Matrix agg = Matrix::Zero(d, d);
    for (int x = 1; x <= g.n_settings(); ++x) {
      agg += rec[static_cast<std::size_t>(x - 1) * g.n_outcomes() +
                 (s.outcome(x) - 1)];
    }
    // Hidden states enter through tr[E1 (rho x G^T)], so the payoff operator
    // on the hidden state is the partial trace over Bob's input space.
    const Matrix k =
        partial_trace(e1.mat() * tensor(eye, agg.transpose().eval()), d, d,
                      Subsystem::A);
    best = std::max(best, max_eigenvalue(0.5 * (k + k.adjoint())));
  }
  return best;
}

double mdi_ratio(const CorrelationTable& p, const BetaGame& g) {
  const double bound = lhs_payoff_bound(g);
  if (bound <= 0) {
    throw DegenerateGameError("game has non-positive LHS payoff bound " +
                              std::to_string(bound));
  }
  return payoff(p, g) / bound;
}

double mdi_measure(const Assemblage& a, const TomoSet& tomo,
                   const SdpOptions& opts) {
  RobustnessResult rr = steering_robustness(a, opts);
  const BetaGame game = beta_from_witness(rr.witness, tomo);
  const CorrelationTable table =
      correlations(a, max_entangled_projector(a.dim()), tomo);
  return std::max(mdi_ratio(table, game) - 1.0, 0.0);
}

double mdi_measure(const Assemblage& a) {
  if (a.dim() == 2) return mdi_measure(a, pauli_tomo_set());
  return mdi_measure(a, qudit_tomo_set(a.dim()));
}

CorrelationTable apply_loss(const CorrelationTable& p, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw RangeError("detection efficiency " + std::to_string(eta) +
                     " outside [0, 1]");
  }
  std::vector<double> scaled = p.values();
  for (double& v : scaled) v *= eta;
  return CorrelationTable(p.n_settings(), p.n_outcomes(), p.tomo_size(),
                          std::move(scaled));
}

}  // namespace steerkit
