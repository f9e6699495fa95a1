#include "steerkit/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <sstream>
#include <unsupported/Eigen/KroneckerProduct>

namespace steerkit {

Matrix tensor(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b);
}

HermitianMatrix tensor(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(tensor(a.mat(), b.mat()));
}

Matrix partial_trace(const Matrix& m, int dim_a, int dim_b, Subsystem keep) {
  if (dim_a < 1 || dim_b < 1) {
    throw DimensionError("partial_trace factor dims must be >= 1");
  }
  if (m.rows() != m.cols() ||
      m.rows() != static_cast<Eigen::Index>(dim_a) * dim_b) {
    std::ostringstream os;
    os << "partial_trace expects a " << dim_a * dim_b << "x" << dim_a * dim_b
       << " matrix for factors " << dim_a << "x" << dim_b << ", got "
       << m.rows() << "x" << m.cols();
    throw DimensionError(os.str());
  }
  if (keep == Subsystem::B) {
    Matrix out = Matrix::Zero(dim_b, dim_b);
    for (int k = 0; k < dim_a; ++k) {
      out += m.block(k * dim_b, k * dim_b, dim_b, dim_b);
    }
    return out;
  }
  Matrix out = Matrix::Zero(dim_a, dim_a);
  for (int i = 0; i < dim_a; ++i) {
    for (int j = 0; j < dim_a; ++j) {
      out(i, j) = m.block(i * dim_b, j * dim_b, dim_b, dim_b).trace();
    }
  }
  return out;
}

Matrix transposed(const Matrix& m) { return m.transpose(); }

HermitianMatrix transposed(const HermitianMatrix& m) {
  return HermitianMatrix(m.mat().transpose());
}

HermitianMatrix max_entangled_projector(int d) {
  if (d < 2) {
    throw DimensionError("max_entangled_projector requires local dim >= 2, got " +
                         std::to_string(d));
  }
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(d) * d);
  for (int j = 0; j < d; ++j) psi(j * d + j) = 1.0 / std::sqrt(double(d));
  return HermitianMatrix(psi * psi.adjoint());
}

namespace {

Eigen::VectorXd eigenvalues_checked(const Matrix& m) {
  const double drift = hermiticity_drift(m);
  if (drift > tol::hermitian_operate) {
    std::ostringstream os;
    os << "matrix deviates from Hermitian by " << drift
       << " (allowed " << tol::hermitian_operate << ")";
    throw NotHermitianError(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(((m + m.adjoint()) / 2.0).eval(),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

}  // namespace

double min_eigenvalue(const Matrix& m) { return eigenvalues_checked(m).minCoeff(); }
double max_eigenvalue(const Matrix& m) { return eigenvalues_checked(m).maxCoeff(); }

double min_eigenvalue(const HermitianMatrix& m) { return min_eigenvalue(m.mat()); }
double max_eigenvalue(const HermitianMatrix& m) { return max_eigenvalue(m.mat()); }

}  // namespace steerkit
