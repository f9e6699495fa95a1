#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "steerkit/errors.hpp"
#include "steerkit/tolerances.hpp"

namespace steerkit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Max-abs elementwise deviation of m from its own adjoint.
double hermiticity_drift(const Matrix& m);

// Square complex matrix with the Hermitian invariant enforced at construction.
// Inputs within tol::hermitian_construct of Hermitian are symmetrized to
// (m + m^dag)/2; anything further off is rejected.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const Matrix& m);

  static HermitianMatrix zero(int dim);
  static HermitianMatrix identity(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& mat() const { return m_; }
  operator const Matrix&() const { return m_; }

 private:
  Matrix m_;
};

// Unit-trace positive semidefinite Hermitian matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(const Matrix& m);
  explicit DensityMatrix(const HermitianMatrix& m);

  int dim() const { return h_.dim(); }
  const Matrix& mat() const { return h_.mat(); }
  operator const Matrix&() const { return h_.mat(); }
  const HermitianMatrix& hermitian() const { return h_; }

 private:
  HermitianMatrix h_;
};

// Measurement: positive semidefinite elements of equal dimension summing to
// the identity. Element i corresponds to outcome a = i + 1.
class Povm {
 public:
  explicit Povm(std::vector<HermitianMatrix> elements);

  int dim() const { return elements_.front().dim(); }
  int n_outcomes() const { return static_cast<int>(elements_.size()); }
  const std::vector<HermitianMatrix>& elements() const { return elements_; }
  const HermitianMatrix& element(int a) const;  // 1-based outcome label

 private:
  std::vector<HermitianMatrix> elements_;
};

}  // namespace steerkit
