#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "steerkit/linalg.hpp"
#include "steerkit/sdp.hpp"
#include "support/random_instances.hpp"

using namespace steerkit;

namespace {

double dev_real(const RealMatrix& a, const RealMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("real embedding of identity and Pauli Y") {
  CHECK(dev_real(hermitian_to_real_embedding(Matrix::Identity(2, 2)),
                 RealMatrix::Identity(4, 4)) == 0.0);

  RealMatrix y_embedded(4, 4);
  y_embedded << 0, 0, 0, 1,
                0, 0, -1, 0,
                0, -1, 0, 0,
                1, 0, 0, 0;
  CHECK(dev_real(hermitian_to_real_embedding(pauli_y()), y_embedded) == 0.0);

  CHECK_THROWS_AS(hermitian_to_real_embedding(Matrix::Zero(2, 3)),
                  DimensionError);
}

TEST_CASE("real embedding doubles every eigenvalue's multiplicity") {
  testsupport::Rng rng(101);
  for (int k = 0; k < 10; ++k) {
    Matrix g = testsupport::ginibre(3, 3, rng);
    Matrix h = g + g.adjoint();
    const RealMatrix e = hermitian_to_real_embedding(h);
    Eigen::SelfAdjointEigenSolver<Matrix> sc(h);
    Eigen::SelfAdjointEigenSolver<RealMatrix> sr(e);
    REQUIRE(sc.info() == Eigen::Success);
    REQUIRE(sr.info() == Eigen::Success);
    for (int i = 0; i < 3; ++i) {
      // Sorted ascending; eigenvalue i of h appears at slots 2i, 2i+1.
      CHECK(std::abs(sr.eigenvalues()(2 * i) - sc.eigenvalues()(i)) < 1e-10);
      CHECK(std::abs(sr.eigenvalues()(2 * i + 1) - sc.eigenvalues()(i)) < 1e-10);
    }
    // tr(embed(a) embed(b)) = 2 Re tr(ab).
    Matrix g2 = testsupport::ginibre(3, 3, rng);
    Matrix h2 = g2 + g2.adjoint();
    const double embedded =
        (e * hermitian_to_real_embedding(h2)).trace();
    CHECK(std::abs(embedded - 2 * (h * h2).trace().real()) < 1e-10);
  }
}

TEST_CASE("normalization-constrained minimum trace") {
  // min tr(M) over M >= 0 with tr(ZM) = 0, tr(XM) = 0, tr(M) = 1.
  SdpProblem p(SdpSense::Minimize);
  const int m = p.add_block("M", 2);
  p.set_objective(m, HermitianMatrix::identity(2));
  p.add_constraint({SdpTerm{m, HermitianMatrix(pauli_z())}}, 0.0);
  p.add_constraint({SdpTerm{m, HermitianMatrix(pauli_x())}}, 0.0);
  p.add_constraint({SdpTerm{m, HermitianMatrix::identity(2)}}, 1.0);
  const SdpSolution s = solve(p);
  REQUIRE(s.status == SdpStatus::Optimal);
  CHECK(std::abs(s.primal_value - 1.0) < 1e-7);
  CHECK(std::abs(s.dual_value - 1.0) < 1e-7);
  CHECK(s.gap <= 1e-8 * std::max(1.0, std::abs(s.primal_value)) + 1e-15);
  CHECK(min_eigenvalue(s.block("M").mat()) > -1e-9);
  CHECK_THROWS_AS(s.block("missing"), IndexError);
}

TEST_CASE("maximum eigenvalue as an SDP") {
  // max tr(Z rho) over rho >= 0, tr(rho) = 1 -> 1 at rho = |0><0|.
  SdpProblem p(SdpSense::Maximize);
  const int rho = p.add_block("rho", 2);
  p.set_objective(rho, HermitianMatrix(pauli_z()));
  p.add_constraint({SdpTerm{rho, HermitianMatrix::identity(2)}}, 1.0);
  const SdpSolution s = solve(p);
  REQUIRE(s.status == SdpStatus::Optimal);
  CHECK(std::abs(s.primal_value - 1.0) < 1e-7);
  CHECK((s.block("rho").mat()(0, 0).real()) == doctest::Approx(1.0).epsilon(1e-6));

  // Same game with a random Hermitian objective: optimum = max eigenvalue.
  testsupport::Rng rng(111);
  for (int k = 0; k < 5; ++k) {
    Matrix g = testsupport::ginibre(3, 3, rng);
    HermitianMatrix c(g + g.adjoint());
    SdpProblem q(SdpSense::Maximize);
    const int b = q.add_block("rho", 3);
    q.set_objective(b, c);
    q.add_constraint({SdpTerm{b, HermitianMatrix::identity(3)}}, 1.0);
    const SdpSolution sol = solve(q);
    REQUIRE(sol.status == SdpStatus::Optimal);
    CHECK(std::abs(sol.primal_value - max_eigenvalue(c)) < 1e-6);
    CHECK(min_eigenvalue(sol.block("rho").mat()) > -1e-9);
    // Weak duality on the verified optimum (maximization: primal <= dual).
    CHECK(sol.primal_value <= sol.dual_value + 1e-6);
  }
}

TEST_CASE("infeasible trace constraint is reported as infeasible") {
  // tr(X) = -1 with X >= 0 has no solution; the dual ray is unbounded.
  SdpProblem p(SdpSense::Minimize);
  const int x = p.add_block("X", 2);
  p.set_objective(x, HermitianMatrix::identity(2));
  p.add_constraint({SdpTerm{x, HermitianMatrix::identity(2)}}, -1.0);
  const SdpSolution s = solve(p);
  CHECK(s.status != SdpStatus::Optimal);
}

TEST_CASE("problem construction is validated") {
  SdpProblem p;
  const int b = p.add_block("B", 2);
  CHECK_THROWS_AS(p.add_block("B", 3), ValidationError);  // duplicate id
  CHECK_THROWS_AS(p.add_block("C", 0), DimensionError);
  CHECK_THROWS_AS(p.set_objective(5, HermitianMatrix::identity(2)),
                  IndexError);
  CHECK_THROWS_AS(p.set_objective(b, HermitianMatrix::identity(3)),
                  DimensionError);
  CHECK_THROWS_AS(p.add_constraint({}, 1.0), ValidationError);
  CHECK_THROWS_AS(p.add_constraint({SdpTerm{7, HermitianMatrix::identity(2)}},
                                   0.0),
                  IndexError);
  CHECK_THROWS_AS(p.add_constraint({SdpTerm{b, HermitianMatrix::identity(3)}},
                                   0.0),
                  DimensionError);
  CHECK_THROWS_AS(
      p.add_constraint({SdpTerm{b, HermitianMatrix::identity(2)}},
                       std::numeric_limits<double>::infinity()),
      ValidationError);
  SdpProblem empty;
  CHECK_THROWS_AS(solve(empty), ValidationError);
}

TEST_CASE("solve is deterministic") {
  auto build = [] {
    SdpProblem p(SdpSense::Maximize);
    const int rho = p.add_block("rho", 2);
    p.set_objective(rho, HermitianMatrix(Matrix(pauli_z() + 0.5 * pauli_x())));
    p.add_constraint({SdpTerm{rho, HermitianMatrix::identity(2)}}, 1.0);
    return p;
  };
  const SdpSolution s1 = solve(build());
  const SdpSolution s2 = solve(build());
  REQUIRE(s1.status == SdpStatus::Optimal);
  CHECK(s1.primal_value == s2.primal_value);  // bitwise reproducible
  CHECK(s1.dual_value == s2.dual_value);
  CHECK(s1.trace.size() == s2.trace.size());
}

TEST_CASE("multi-block problems couple through shared constraints") {
  // min tr(A) + tr(B) with tr(A) - tr(B) = 0 and tr(A) + tr(B) = 2.
  SdpProblem p(SdpSense::Minimize);
  const int a = p.add_block("A", 2);
  const int b = p.add_block("B", 3);
  p.set_objective(a, HermitianMatrix::identity(2));
  p.set_objective(b, HermitianMatrix::identity(3));
  p.add_constraint({SdpTerm{a, HermitianMatrix::identity(2)},
                    SdpTerm{b, HermitianMatrix(Matrix(-Matrix::Identity(3, 3)))}},
                   0.0);
  p.add_constraint({SdpTerm{a, HermitianMatrix::identity(2)},
                    SdpTerm{b, HermitianMatrix::identity(3)}},
                   2.0);
  const SdpSolution s = solve(p);
  REQUIRE(s.status == SdpStatus::Optimal);
  CHECK(std::abs(s.primal_value - 2.0) < 1e-7);
  CHECK(std::abs(s.block("A").mat().trace().real() - 1.0) < 1e-6);
  CHECK(std::abs(s.block("B").mat().trace().real() - 1.0) < 1e-6);
}

TEST_CASE("complex-valued data is handled exactly") {
  // max tr(Y rho), tr(rho) = 1 -> 1; optimizer is the +1 eigenprojector of Y.
  SdpProblem p(SdpSense::Maximize);
  const int rho = p.add_block("rho", 2);
  p.set_objective(rho, HermitianMatrix(pauli_y()));
  p.add_constraint({SdpTerm{rho, HermitianMatrix::identity(2)}}, 1.0);
  const SdpSolution s = solve(p);
  REQUIRE(s.status == SdpStatus::Optimal);
  CHECK(std::abs(s.primal_value - 1.0) < 1e-7);
  const Matrix& opt = s.block("rho").mat();
  CHECK(std::abs((opt * pauli_y()).trace().real() - 1.0) < 1e-6);
}

TEST_CASE("tight gap targets remain solvable") {
  SdpOptions opts;
  opts.gap_tol = 1e-10;
  SdpProblem p(SdpSense::Maximize);
  const int rho = p.add_block("rho", 2);
  p.set_objective(rho, HermitianMatrix(pauli_z()));
  p.add_constraint({SdpTerm{rho, HermitianMatrix::identity(2)}}, 1.0);
  const SdpSolution s = solve(p, opts);
  REQUIRE(s.status == SdpStatus::Optimal);
  CHECK(s.gap <= 1e-10 * std::max(1.0, std::abs(s.primal_value)) + 1e-15);
}
