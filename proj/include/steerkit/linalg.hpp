#pragma once

#include "steerkit/hermitian.hpp"

namespace steerkit {

inline Matrix pauli_x() { return (Matrix(2, 2) << 0, 1, 1, 0).finished(); }
inline Matrix pauli_y() {
  return (Matrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished();
}
inline Matrix pauli_z() { return (Matrix(2, 2) << 1, 0, 0, -1).finished(); }

enum class Subsystem { A, B };

// Kronecker product with composite row index i_a * dim_b + i_b.
Matrix tensor(const Matrix& a, const Matrix& b);
HermitianMatrix tensor(const HermitianMatrix& a, const HermitianMatrix& b);

// Trace out one factor of a (dim_a * dim_b)-dimensional bipartite operator.
Matrix partial_trace(const Matrix& m, int dim_a, int dim_b, Subsystem keep);

Matrix transposed(const Matrix& m);
HermitianMatrix transposed(const HermitianMatrix& m);

// Projector onto sum_j |jj> / sqrt(d).
HermitianMatrix max_entangled_projector(int d);

// Extremal eigenvalues. Raw matrices may deviate from Hermitian by at most
// tol::hermitian_operate.
double min_eigenvalue(const Matrix& m);
double max_eigenvalue(const Matrix& m);
double min_eigenvalue(const HermitianMatrix& m);
double max_eigenvalue(const HermitianMatrix& m);

}  // namespace steerkit
