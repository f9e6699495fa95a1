#include "steerkit/hermitian.hpp"

#include <Eigen/Eigenvalues>
#include <sstream>

namespace steerkit {

double hermiticity_drift(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("matrix is not square: " + std::to_string(m.rows()) +
                         "x" + std::to_string(m.cols()));
  }
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianMatrix::HermitianMatrix(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw DimensionError("HermitianMatrix requires a square matrix of dim >= 1, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  const double drift = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (drift > tol::hermitian_construct) {
    std::ostringstream os;
    os << "matrix deviates from Hermitian by " << drift
       << " (allowed " << tol::hermitian_construct << ")";
    throw NotHermitianError(os.str());
  }
  m_ = ((m + m.adjoint()) / 2.0).eval();
}

HermitianMatrix HermitianMatrix::zero(int dim) {
  return HermitianMatrix(Matrix::Zero(dim, dim));
}

HermitianMatrix HermitianMatrix::identity(int dim) {
  return HermitianMatrix(Matrix::Identity(dim, dim));
}

namespace {

double min_eig_of(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace

DensityMatrix::DensityMatrix(const Matrix& m) : DensityMatrix(HermitianMatrix(m)) {}

DensityMatrix::DensityMatrix(const HermitianMatrix& m) : h_(m) {
  const double tr = h_.mat().trace().real();
  if (std::abs(tr - 1.0) > tol::unit_trace) {
    std::ostringstream os;
    os << "density matrix trace is " << tr << ", must be 1 within " << tol::unit_trace;
    throw ValidationError(os.str());
  }
  const double lo = min_eig_of(h_.mat());
  if (lo < -tol::psd_floor) {
    std::ostringstream os;
    os << "density matrix has eigenvalue " << lo << " below -" << tol::psd_floor;
    throw ValidationError(os.str());
  }
}

Povm::Povm(std::vector<HermitianMatrix> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw ValidationError("POVM needs at least one element");
  const int d = elements_.front().dim();
  Matrix sum = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i].dim() != d) {
      throw DimensionError("POVM element " + std::to_string(i + 1) + " has dim " +
                           std::to_string(elements_[i].dim()) + ", expected " +
                           std::to_string(d));
    }
    const double lo = min_eig_of(elements_[i].mat());
    if (lo < -tol::psd_floor) {
      std::ostringstream os;
      os << "POVM element " << i + 1 << " has eigenvalue " << lo
         << " below -" << tol::psd_floor;
      throw ValidationError(os.str());
    }
    sum += elements_[i].mat();
  }
  const double dev = (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (dev > tol::unit_trace) {
    std::ostringstream os;
    os << "POVM elements sum deviates from identity by " << dev;
    throw ValidationError(os.str());
  }
}

const HermitianMatrix& Povm::element(int a) const {
  if (a < 1 || a > n_outcomes()) {
    throw IndexError("POVM outcome " + std::to_string(a) + " out of range 1.." +
                     std::to_string(n_outcomes()));
  }
  return elements_[static_cast<std::size_t>(a - 1)];
}

}  // namespace steerkit
