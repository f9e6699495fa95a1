#include "support/random_instances.hpp"

#include <stdexcept>

#include "steerkit/measures.hpp"

namespace testsupport {

using steerkit::enumerate_strategies;
using steerkit::from_state_and_measurements;
using steerkit::local_bound;
using steerkit::max_eigenvalue;
using steerkit::max_entangled_projector;
using steerkit::steering_robustness;
using steerkit::tensor;
using steerkit::WitnessNormalization;

Matrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      g(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  return g;
}

Matrix haar_unitary(int d, Rng& rng) {
  const Matrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity so the distribution is Haar.
  for (int j = 0; j < d; ++j) {
    const Complex rj = r(j, j);
    q.col(j) *= rj / std::abs(rj);
  }
  return q;
}

DensityMatrix random_density_matrix(int d, Rng& rng) {
  const Matrix g = ginibre(d, d, rng);
  Matrix w = g * g.adjoint();
  w /= w.trace().real();
  return DensityMatrix(w);
}

Povm random_projective_povm(int d, Rng& rng) {
  const Matrix u = haar_unitary(d, rng);
  std::vector<HermitianMatrix> elements;
  elements.reserve(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) {
    const Vector col = u.col(a);
    elements.emplace_back(Matrix(col * col.adjoint()));
  }
  return Povm(std::move(elements));
}

Assemblage random_state_assemblage(int n_settings, Rng& rng, double purity_bias) {
  Matrix rho = random_density_matrix(4, rng).mat();
  if (purity_bias > 0.0) {
    Vector psi = ginibre(4, 1, rng).col(0);
    psi.normalize();
    rho = purity_bias * (psi * psi.adjoint()) + (1.0 - purity_bias) * rho;
  }
  std::vector<Povm> povms;
  povms.reserve(static_cast<std::size_t>(n_settings));
  for (int x = 0; x < n_settings; ++x) povms.push_back(random_projective_povm(2, rng));
  return from_state_and_measurements(DensityMatrix(rho), povms, 2);
}

Assemblage random_lhs_assemblage(int n_settings, int n_outcomes, int dim,
                                 Rng& rng) {
  const auto strategies = enumerate_strategies(n_settings, n_outcomes);
  std::vector<Matrix> hidden;
  hidden.reserve(strategies.size());
  double total = 0;
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    const Matrix g = ginibre(dim, dim, rng);
    Matrix w = g * g.adjoint();
    total += w.trace().real();
    hidden.push_back(std::move(w));
  }
  for (Matrix& w : hidden) w /= total;
  std::vector<HermitianMatrix> elements;
  elements.reserve(static_cast<std::size_t>(n_settings) * n_outcomes);
  for (int x = 1; x <= n_settings; ++x) {
    for (int a = 1; a <= n_outcomes; ++a) {
      Matrix sigma = Matrix::Zero(dim, dim);
      for (std::size_t i = 0; i < strategies.size(); ++i) {
        if (strategies[i].outcome(x) == a) sigma += hidden[i];
      }
      elements.emplace_back(sigma);
    }
  }
  return Assemblage(n_settings, n_outcomes, dim, std::move(elements));
}

Assemblage random_steerable_assemblage(int n_settings, Rng& rng) {
  std::uniform_real_distribution<double> bias(0.8, 1.0);
  for (int attempt = 0; attempt < 500; ++attempt) {
    Assemblage a = random_state_assemblage(n_settings, rng, bias(rng));
    if (steering_robustness(a).value > 1e-3) return a;
  }
  throw std::runtime_error("could not sample a steerable assemblage");
}

HermitianMatrix random_povm_element(int dim, Rng& rng) {
  const Matrix g = ginibre(dim, dim, rng);
  Matrix w = g * g.adjoint();
  std::uniform_real_distribution<double> headroom(1.0, 2.0);
  w /= max_eigenvalue(w) * headroom(rng);
  return HermitianMatrix(w);
}

HermitianMatrix random_separable_degraded_element(int d, int n_terms, Rng& rng) {
  const Matrix phi = max_entangled_projector(d).mat();
  Matrix sum = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < n_terms; ++i) {
    const Matrix op = tensor(ginibre(d, d, rng), ginibre(d, d, rng));
    sum += op * phi * op.adjoint();
  }
  std::uniform_real_distribution<double> headroom(1.0, 2.0);
  sum /= max_eigenvalue(sum) * headroom(rng);
  return HermitianMatrix(sum);
}

BetaGame random_valid_game(const TomoSet& tomo, int n_settings, int n_outcomes,
                           Rng& rng) {
  const int d = tomo.dim();
  std::vector<HermitianMatrix> elements;
  elements.reserve(static_cast<std::size_t>(n_settings) * n_outcomes);
  for (int i = 0; i < n_settings * n_outcomes; ++i) {
    const Matrix g = ginibre(d, d, rng);
    elements.emplace_back(Matrix(g * g.adjoint()));
  }
  WitnessSet raw(n_settings, n_outcomes, d, std::move(elements),
                 WitnessNormalization::Shifted);
  const double alpha = local_bound(raw);
  std::vector<HermitianMatrix> scaled;
  scaled.reserve(raw.elements().size());
  for (const HermitianMatrix& f : raw.elements()) {
    scaled.emplace_back(Matrix(f.mat() / alpha));
  }
  return steerkit::beta_from_witness(
      WitnessSet(n_settings, n_outcomes, d, std::move(scaled),
                 WitnessNormalization::SRdual),
      tomo);
}

}  // namespace testsupport
