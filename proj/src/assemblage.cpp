#include "steerkit/assemblage.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

namespace steerkit {

namespace {

double min_eig_of(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace

Assemblage::Assemblage(int n_settings, int n_outcomes, int dim,
                       std::vector<HermitianMatrix> elements)
    : n_settings_(n_settings),
      n_outcomes_(n_outcomes),
      dim_(dim),
      elements_(std::move(elements)) {
  if (n_settings_ < 1 || n_outcomes_ < 1 || dim_ < 1) {
    throw ValidationError("assemblage needs nSettings, nOutcomes, dim >= 1");
  }
  const std::size_t expected =
      static_cast<std::size_t>(n_settings_) * static_cast<std::size_t>(n_outcomes_);
  if (elements_.size() != expected) {
    throw ValidationError("assemblage holds " + std::to_string(elements_.size()) +
                          " elements, expected " + std::to_string(expected));
  }
  for (int x = 1; x <= n_settings_; ++x) {
    for (int a = 1; a <= n_outcomes_; ++a) {
      const HermitianMatrix& s = at(x, a);
      if (s.dim() != dim_) {
        std::ostringstream os;
        os << "element (x=" << x << ", a=" << a << ") has dim " << s.dim()
           << ", expected " << dim_;
        throw ValidationError(os.str());
      }
      const double lo = min_eig_of(s.mat());
      if (lo < -tol::psd_floor) {
        std::ostringstream os;
        os << "positivity violated at (x=" << x << ", a=" << a
           << "): eigenvalue " << lo;
        throw ValidationError(os.str());
      }
    }
  }
  Matrix reduced = Matrix::Zero(dim_, dim_);
  for (int a = 1; a <= n_outcomes_; ++a) reduced += at(1, a).mat();
  for (int x = 2; x <= n_settings_; ++x) {
    Matrix other = Matrix::Zero(dim_, dim_);
    for (int a = 1; a <= n_outcomes_; ++a) other += at(x, a).mat();
    const double dev = (other - reduced).cwiseAbs().maxCoeff();
    if (dev > tol::no_signaling) {
      std::ostringstream os;
      os << "no-signaling violated between settings 1 and " << x
         << ": deviation " << dev;
      throw ValidationError(os.str());
    }
  }
  const double tr = reduced.trace().real();
  if (std::abs(tr - 1.0) > tol::no_signaling) {
    std::ostringstream os;
    os << "normalization violated: reduced-state trace " << tr;
    throw ValidationError(os.str());
  }
}

const HermitianMatrix& Assemblage::at(int x, int a) const {
  if (x < 1 || x > n_settings_ || a < 1 || a > n_outcomes_) {
    throw IndexError("assemblage index (x=" + std::to_string(x) + ", a=" +
                     std::to_string(a) + ") out of range");
  }
  return elements_[static_cast<std::size_t>(x - 1) * n_outcomes_ + (a - 1)];
}

Matrix Assemblage::reduced_state() const {
  Matrix reduced = Matrix::Zero(dim_, dim_);
  for (int a = 1; a <= n_outcomes_; ++a) reduced += at(1, a).mat();
  return reduced;
}

long DeterministicStrategy::encoding(int n_outcomes) const {
  long code = 0;
  long stride = 1;
  for (int a : outcomes) {
    code += static_cast<long>(a - 1) * stride;
    stride *= n_outcomes;
  }
  return code;
}

std::vector<DeterministicStrategy> enumerate_strategies(int n_settings,
                                                        int n_outcomes) {
  if (n_settings < 1 || n_outcomes < 1) {
    throw ValidationError("enumerate_strategies needs nSettings, nOutcomes >= 1");
  }
  long total = 1;
  for (int x = 0; x < n_settings; ++x) {
    total *= n_outcomes;
    if (total > 1000000L) {
      throw TooManyStrategiesError(
          "strategy count " + std::to_string(n_outcomes) + "^" +
          std::to_string(n_settings) + " exceeds 1e6");
    }
  }
  std::vector<DeterministicStrategy> out;
  out.reserve(static_cast<std::size_t>(total));
  for (long code = 0; code < total; ++code) {
    DeterministicStrategy s;
    s.outcomes.resize(static_cast<std::size_t>(n_settings));
    long rest = code;
    for (int x = 0; x < n_settings; ++x) {
      s.outcomes[static_cast<std::size_t>(x)] = 1 + static_cast<int>(rest % n_outcomes);
      rest /= n_outcomes;
    }
    out.push_back(std::move(s));
  }
  return out;
}

LhsModel::LhsModel(int n_settings, int n_outcomes, int dim,
                   std::vector<HermitianMatrix> states)
    : n_settings_(n_settings),
      n_outcomes_(n_outcomes),
      dim_(dim),
      states_(std::move(states)) {
  const auto strategies = enumerate_strategies(n_settings_, n_outcomes_);
  if (states_.size() != strategies.size()) {
    throw ValidationError("hidden-state model holds " +
                          std::to_string(states_.size()) + " states, expected " +
                          std::to_string(strategies.size()));
  }
  double total = 0;
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (states_[i].dim() != dim_) {
      throw ValidationError("hidden state " + std::to_string(i) + " has dim " +
                            std::to_string(states_[i].dim()) + ", expected " +
                            std::to_string(dim_));
    }
    const double lo = min_eig_of(states_[i].mat());
    if (lo < -tol::psd_floor) {
      std::ostringstream os;
      os << "hidden state " << i << " has eigenvalue " << lo;
      throw ValidationError(os.str());
    }
    total += states_[i].mat().trace().real();
  }
  if (std::abs(total - 1.0) > tol::lhs_total_weight) {
    std::ostringstream os;
    os << "hidden-state weights sum to " << total << ", expected 1";
    throw ValidationError(os.str());
  }
}

Matrix LhsModel::reconstruct(int x, int a) const {
  if (x < 1 || x > n_settings_ || a < 1 || a > n_outcomes_) {
    throw IndexError("hidden-state model index (x=" + std::to_string(x) +
                     ", a=" + std::to_string(a) + ") out of range");
  }
  const auto strategies = enumerate_strategies(n_settings_, n_outcomes_);
  Matrix out = Matrix::Zero(dim_, dim_);
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    if (strategies[i].response(a, x)) out += states_[i].mat();
  }
  return out;
}

double LhsModel::reconstruction_error(const Assemblage& target) const {
  if (target.n_settings() != n_settings_ || target.n_outcomes() != n_outcomes_ ||
      target.dim() != dim_) {
    throw DimensionError("hidden-state model shape does not match assemblage");
  }
  double worst = 0;
  for (int x = 1; x <= n_settings_; ++x) {
    for (int a = 1; a <= n_outcomes_; ++a) {
      const double dev =
          (reconstruct(x, a) - target.at(x, a).mat()).cwiseAbs().maxCoeff();
      worst = std::max(worst, dev);
    }
  }
  return worst;
}

Assemblage from_state_and_measurements(const DensityMatrix& state,
                                       const std::vector<Povm>& measurements,
                                       int dim_a) {
  if (measurements.empty()) {
    throw ValidationError("at least one measurement setting is required");
  }
  if (dim_a < 1 || state.dim() % dim_a != 0) {
    throw DimensionError("state dim " + std::to_string(state.dim()) +
                         " is not divisible by Alice dim " + std::to_string(dim_a));
  }
  const int dim_b = state.dim() / dim_a;
  const int n_outcomes = measurements.front().n_outcomes();
  for (std::size_t x = 0; x < measurements.size(); ++x) {
    if (measurements[x].dim() != dim_a) {
      throw DimensionError("measurement " + std::to_string(x + 1) + " acts on dim " +
                           std::to_string(measurements[x].dim()) + ", expected " +
                           std::to_string(dim_a));
    }
    if (measurements[x].n_outcomes() != n_outcomes) {
      throw ValidationError("measurement " + std::to_string(x + 1) + " has " +
                            std::to_string(measurements[x].n_outcomes()) +
                            " outcomes, expected " + std::to_string(n_outcomes));
    }
  }
  const Matrix eye_b = Matrix::Identity(dim_b, dim_b);
  std::vector<HermitianMatrix> elements;
  elements.reserve(measurements.size() * static_cast<std::size_t>(n_outcomes));
  for (const Povm& povm : measurements) {
    for (int a = 1; a <= n_outcomes; ++a) {
      const Matrix m = state.mat() * tensor(povm.element(a).mat(), eye_b);
      elements.emplace_back(partial_trace(m, dim_a, dim_b, Subsystem::B));
    }
  }
  return Assemblage(static_cast<int>(measurements.size()), n_outcomes, dim_b,
                    std::move(elements));
}

}  // namespace steerkit
