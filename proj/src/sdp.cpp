#include "steerkit/sdp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <sstream>

namespace steerkit {

RealMatrix hermitian_to_real_embedding(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("embedding requires a square matrix");
  }
  const Eigen::Index n = m.rows();
  RealMatrix out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = m.real();
  out.topRightCorner(n, n) = -m.imag();
  out.bottomLeftCorner(n, n) = m.imag();
  out.bottomRightCorner(n, n) = m.real();
  return out;
}

int SdpProblem::add_block(const std::string& id, int dim) {
  if (dim < 1) throw DimensionError("SDP block dim must be >= 1");
  for (const std::string& existing : ids_) {
    if (existing == id) throw ValidationError("duplicate SDP block id: " + id);
  }
  ids_.push_back(id);
  dims_.push_back(dim);
  return static_cast<int>(dims_.size()) - 1;
}

void SdpProblem::set_objective(int block, const HermitianMatrix& coeff) {
  if (block < 0 || block >= n_blocks()) {
    throw IndexError("objective refers to unknown block " + std::to_string(block));
  }
  if (coeff.dim() != block_dim(block)) {
    throw DimensionError("objective coefficient dim mismatch on block " +
                         block_id(block));
  }
  objective_.emplace_back(block, coeff);
}

void SdpProblem::add_constraint(std::vector<SdpTerm> terms, double rhs) {
  if (terms.empty()) throw ValidationError("SDP constraint has no terms");
  if (!std::isfinite(rhs)) throw ValidationError("SDP constraint rhs is not finite");
  for (const SdpTerm& t : terms) {
    if (t.block < 0 || t.block >= n_blocks()) {
      throw IndexError("constraint refers to unknown block " +
                       std::to_string(t.block));
    }
    if (t.coeff.dim() != block_dim(t.block)) {
      throw DimensionError("constraint coefficient dim mismatch on block " +
                           block_id(t.block));
    }
  }
  constraints_.push_back(SdpConstraint{std::move(terms), rhs});
}

const HermitianMatrix& SdpSolution::block(const std::string& id) const {
  auto it = block_values.find(id);
  if (it == block_values.end()) throw IndexError("no solution block named " + id);
  return it->second;
}

namespace {

using Blocks = std::vector<RealMatrix>;

double block_dot(const Blocks& a, const Blocks& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i].cwiseProduct(b[i]).sum();
  return s;
}

double block_max_abs(const Blocks& a) {
  double s = 0;
  for (const RealMatrix& m : a) s = std::max(s, m.cwiseAbs().maxCoeff());
  return s;
}

// Complex-to-real data with constraint terms grouped per block for the
// Schur-complement assembly.
struct EmbeddedData {
  std::vector<int> dims;
  Blocks C;
  std::vector<std::vector<std::pair<int, RealMatrix>>> terms_per_con;
  std::vector<std::vector<std::pair<int, const RealMatrix*>>> terms_per_block;
  Eigen::VectorXd b;
  double obj_sign = 1;  // undoes the min normalization when reporting
  int n_total = 0;
};

EmbeddedData embed_problem(const SdpProblem& p) {
  EmbeddedData e;
  const double sign = p.sense() == SdpSense::Maximize ? -1.0 : 1.0;
  e.obj_sign = sign;
  const int nb = p.n_blocks();
  e.dims.resize(static_cast<std::size_t>(nb));
  e.C.assign(static_cast<std::size_t>(nb), RealMatrix());
  for (int i = 0; i < nb; ++i) {
    const int ed = 2 * p.block_dim(i);
    e.dims[static_cast<std::size_t>(i)] = ed;
    e.C[static_cast<std::size_t>(i)] = RealMatrix::Zero(ed, ed);
    e.n_total += ed;
  }
  // Coefficients are halved so <embed(a)/2, embed(x)> = tr(a x).
  for (const auto& [block, coeff] : p.objective()) {
    e.C[static_cast<std::size_t>(block)] +=
        sign * 0.5 * hermitian_to_real_embedding(coeff.mat());
  }
  const int m = p.n_constraints();
  e.terms_per_con.resize(static_cast<std::size_t>(m));
  e.terms_per_block.resize(static_cast<std::size_t>(nb));
  e.b.resize(m);
  for (int k = 0; k < m; ++k) {
    const SdpConstraint& con = p.constraints()[static_cast<std::size_t>(k)];
    e.b(k) = con.rhs;
    // Sum repeated terms on the same block into one coefficient.
    std::map<int, RealMatrix> merged;
    for (const SdpTerm& t : con.terms) {
      RealMatrix a = 0.5 * hermitian_to_real_embedding(t.coeff.mat());
      auto it = merged.find(t.block);
      if (it == merged.end()) {
        merged.emplace(t.block, std::move(a));
      } else {
        it->second += a;
      }
    }
    for (auto& [block, a] : merged) {
      e.terms_per_con[static_cast<std::size_t>(k)].emplace_back(block, std::move(a));
    }
  }
  for (int k = 0; k < m; ++k) {
    for (const auto& [block, a] : e.terms_per_con[static_cast<std::size_t>(k)]) {
      e.terms_per_block[static_cast<std::size_t>(block)].emplace_back(k, &a);
    }
  }
  return e;
}

// (X + J X J^T)/2 in closed block form; keeps iterates in the image of the
// complex embedding, where P is symmetric and Q antisymmetric.
void project_embedded(RealMatrix& x) {
  const Eigen::Index n = x.rows() / 2;
  RealMatrix p = 0.5 * (x.topLeftCorner(n, n) + x.bottomRightCorner(n, n));
  RealMatrix q = 0.5 * (x.bottomLeftCorner(n, n) - x.topRightCorner(n, n));
  p = 0.5 * (p + p.transpose()).eval();
  q = 0.5 * (q - q.transpose()).eval();
  x.topLeftCorner(n, n) = p;
  x.bottomRightCorner(n, n) = p;
  x.bottomLeftCorner(n, n) = q;
  x.topRightCorner(n, n) = -q;
}

HermitianMatrix complex_from_embedded(const RealMatrix& x) {
  const Eigen::Index n = x.rows() / 2;
  RealMatrix p = 0.5 * (x.topLeftCorner(n, n) + x.bottomRightCorner(n, n));
  RealMatrix q = 0.5 * (x.bottomLeftCorner(n, n) - x.topRightCorner(n, n));
  p = 0.5 * (p + p.transpose()).eval();
  q = 0.5 * (q - q.transpose()).eval();
  Matrix h = p.cast<Complex>() + Complex(0, 1) * q.cast<Complex>();
  return HermitianMatrix(h);
}

// Largest step in [0, cap] keeping s + alpha * ds positive definite.
double max_step(const Blocks& s, const Blocks& ds, double cap) {
  double alpha = cap;
  for (std::size_t i = 0; i < s.size(); ++i) {
    Eigen::LLT<RealMatrix> llt(s[i]);
    if (llt.info() != Eigen::Success) return 0;
    const RealMatrix l = llt.matrixL();
    RealMatrix t = l.triangularView<Eigen::Lower>().solve(ds[i]);
    t = l.triangularView<Eigen::Lower>().solve(t.transpose()).eval();
    t = 0.5 * (t + t.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(t, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    if (lo < 0) alpha = std::min(alpha, -1.0 / lo);
  }
  return alpha;
}

struct Direction {
  Eigen::VectorXd dy;
  Blocks dZ, dX;
};

struct Finalizer {
  const SdpProblem& p;
  const EmbeddedData& e;
  const SdpOptions& opts;

  // Recover complex blocks and re-verify optimality against the original
  // problem; degrade to NumericalFailure rather than report a wrong Optimal.
  SdpSolution finalize(const Blocks& X, const Eigen::VectorXd& y, const Blocks& Z,
                       std::vector<SdpIterate> trace) const {
    SdpSolution sol;
    sol.trace = std::move(trace);
    bool finite = y.allFinite();
    for (const RealMatrix& b : X) finite = finite && b.allFinite();
    for (const RealMatrix& b : Z) finite = finite && b.allFinite();
    if (!finite) return sol;  // NumericalFailure, nothing to recover
    std::vector<HermitianMatrix> xc, zc;
    for (int i = 0; i < p.n_blocks(); ++i) {
      xc.push_back(complex_from_embedded(X[static_cast<std::size_t>(i)]));
      // The variable blocks live in the plain embedding while the dual slack
      // inherits the halved coefficient scale, so the complex slack is twice
      // the recovered matrix.
      zc.emplace_back(
          Matrix(2.0 * complex_from_embedded(Z[static_cast<std::size_t>(i)]).mat()));
    }
    // Objective and residuals recomputed in complex arithmetic.
    double pobj = 0;
    for (const auto& [block, coeff] : p.objective()) {
      pobj += (coeff.mat() * xc[static_cast<std::size_t>(block)].mat())
                  .trace()
                  .real();
    }
    double dobj = 0;
    for (int k = 0; k < p.n_constraints(); ++k) {
      dobj += p.constraints()[static_cast<std::size_t>(k)].rhs * e.obj_sign * y(k);
    }
    double pinf = 0;
    for (const SdpConstraint& con : p.constraints()) {
      Complex lhs = 0;
      for (const SdpTerm& t : con.terms) {
        lhs += (t.coeff.mat() * xc[static_cast<std::size_t>(t.block)].mat()).trace();
      }
      pinf = std::max(pinf, std::abs(lhs.real() - con.rhs));
    }
    // Dual slack in complex form: sign * C - sum_k y_k A_k should equal Z.
    std::vector<Matrix> rd(static_cast<std::size_t>(p.n_blocks()));
    for (int i = 0; i < p.n_blocks(); ++i) {
      const int d = p.block_dim(i);
      rd[static_cast<std::size_t>(i)] =
          -zc[static_cast<std::size_t>(i)].mat() + Matrix::Zero(d, d);
    }
    for (const auto& [block, coeff] : p.objective()) {
      rd[static_cast<std::size_t>(block)] += e.obj_sign * coeff.mat();
    }
    for (int k = 0; k < p.n_constraints(); ++k) {
      const SdpConstraint& con = p.constraints()[static_cast<std::size_t>(k)];
      for (const SdpTerm& t : con.terms) {
        rd[static_cast<std::size_t>(t.block)] -= y(k) * t.coeff.mat();
      }
    }
    double dinf = 0;
    for (const Matrix& r : rd) dinf = std::max(dinf, r.cwiseAbs().maxCoeff());

    double psd_worst = 0;
    for (int i = 0; i < p.n_blocks(); ++i) {
      Eigen::SelfAdjointEigenSolver<Matrix> ex(xc[static_cast<std::size_t>(i)].mat(),
                                               Eigen::EigenvaluesOnly);
      Eigen::SelfAdjointEigenSolver<Matrix> ez(zc[static_cast<std::size_t>(i)].mat(),
                                               Eigen::EigenvaluesOnly);
      psd_worst = std::min({psd_worst, ex.eigenvalues().minCoeff(),
                            ez.eigenvalues().minCoeff()});
    }

    sol.primal_value = pobj;  // computed with the original objective above
    sol.dual_value = dobj;
    sol.gap = std::abs(sol.primal_value - sol.dual_value);
    const bool ok = pinf <= opts.feas_tol && dinf <= opts.feas_tol &&
                    psd_worst >= -tol::psd_floor &&
                    sol.gap <= opts.gap_tol * std::max(1.0, std::abs(sol.primal_value));
    sol.status = ok ? SdpStatus::Optimal : SdpStatus::NumericalFailure;
    for (int i = 0; i < p.n_blocks(); ++i) {
      sol.block_values.emplace(p.block_id(i), xc[static_cast<std::size_t>(i)]);
      sol.dual_slacks.emplace(p.block_id(i), zc[static_cast<std::size_t>(i)]);
    }
    sol.dual_multipliers.assign(y.data(), y.data() + y.size());
    if (e.obj_sign < 0) {
      for (double& v : sol.dual_multipliers) v = -v;
    }
    return sol;
  }
};

}  // namespace

SdpSolution solve(const SdpProblem& p, const SdpOptions& opts) {
  if (p.n_blocks() == 0) throw ValidationError("SDP has no blocks");
  const EmbeddedData e = embed_problem(p);
  const int m = p.n_constraints();
  const std::size_t nb = e.dims.size();

  Blocks X(nb), Z(nb);
  for (std::size_t i = 0; i < nb; ++i) {
    X[i] = RealMatrix::Identity(e.dims[i], e.dims[i]);
    Z[i] = RealMatrix::Identity(e.dims[i], e.dims[i]);
  }
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);

  std::vector<SdpIterate> trace;
  Blocks W(nb), Zinv(nb), Rd(nb), WRW(nb);
  Eigen::VectorXd rp(m), zbar(m), arw(m);
  const Finalizer fin{p, e, opts};

  for (int iter = 1; iter <= opts.max_iterations; ++iter) {
    // Residuals and objective values of the internal minimization problem.
    for (int k = 0; k < m; ++k) {
      double lhs = 0;
      for (const auto& [block, a] : e.terms_per_con[static_cast<std::size_t>(k)]) {
        lhs += a.cwiseProduct(X[static_cast<std::size_t>(block)]).sum();
      }
      rp(k) = e.b(k) - lhs;
    }
    for (std::size_t i = 0; i < nb; ++i) Rd[i] = e.C[i] - Z[i];
    for (int k = 0; k < m; ++k) {
      for (const auto& [block, a] : e.terms_per_con[static_cast<std::size_t>(k)]) {
        Rd[static_cast<std::size_t>(block)] -= y(k) * a;
      }
    }
    const double pobj = block_dot(e.C, X);
    const double dobj = e.b.dot(y);
    const double pinf = m > 0 ? rp.cwiseAbs().maxCoeff() : 0.0;
    const double dinf = block_max_abs(Rd);
    const double mu = block_dot(X, Z) / e.n_total;
    trace.push_back(SdpIterate{iter, mu, e.obj_sign * pobj, e.obj_sign * dobj,
                               pinf, dinf});

    if (!std::isfinite(mu) || !std::isfinite(pobj) || !std::isfinite(dobj)) break;

    const double relgap = std::abs(pobj - dobj) / std::max(1.0, std::abs(pobj));
    if (pinf <= opts.feas_tol && dinf <= opts.feas_tol && relgap <= opts.gap_tol) {
      return fin.finalize(X, y, Z, std::move(trace));
    }

    // Divergence means an infeasibility certificate on one side: a feasible
    // dual ray with unbounded objective (primal infeasible) or the mirror.
    const double ynorm = m > 0 ? y.cwiseAbs().maxCoeff() : 0.0;
    const double xnorm = block_max_abs(X);
    if (dobj > 1e8 && dinf <= 1e-7 * (1 + ynorm)) {
      SdpSolution sol;
      sol.status = SdpStatus::Infeasible;
      sol.trace = std::move(trace);
      return sol;
    }
    if (pobj < -1e8 && pinf <= 1e-7 * (1 + xnorm)) {
      SdpSolution sol;
      sol.status = SdpStatus::Infeasible;
      sol.trace = std::move(trace);
      return sol;
    }
    if (ynorm > 1e12 || xnorm > 1e12 || mu < 1e-17) break;

    // Nesterov-Todd scaling point per block: with X = Lx Lx^T, Z = Lz Lz^T
    // and Lz^T Lx = U S V^T, the matrix W = Lx V S^-1 V^T Lx^T solves
    // W Z W = X. The Cholesky route stays usable at tiny mu, where an
    // eigenvalue test would already call the blocks singular.
    bool scale_ok = true;
    for (std::size_t i = 0; i < nb; ++i) {
      Eigen::LLT<RealMatrix> lltx(X[i]);
      Eigen::LLT<RealMatrix> lltz(Z[i]);
      if (lltx.info() != Eigen::Success || lltz.info() != Eigen::Success) {
        scale_ok = false;
        break;
      }
      const RealMatrix lx = lltx.matrixL();
      const RealMatrix lz = lltz.matrixL();
      Eigen::JacobiSVD<RealMatrix> svd(lz.transpose() * lx,
                                       Eigen::ComputeFullU | Eigen::ComputeFullV);
      if (!(svd.singularValues().minCoeff() > 0)) {
        scale_ok = false;
        break;
      }
      const RealMatrix lxv = lx * svd.matrixV();
      W[i] = lxv * svd.singularValues().cwiseInverse().asDiagonal() *
             lxv.transpose();
      W[i] = 0.5 * (W[i] + W[i].transpose()).eval();
      Zinv[i] = lltz.solve(RealMatrix::Identity(e.dims[i], e.dims[i]));
      Zinv[i] = 0.5 * (Zinv[i] + Zinv[i].transpose()).eval();
      WRW[i] = W[i] * Rd[i] * W[i];
      WRW[i] = 0.5 * (WRW[i] + WRW[i].transpose()).eval();
    }
    if (!scale_ok) break;

    for (int k = 0; k < m; ++k) {
      double zb = 0, ar = 0;
      for (const auto& [block, a] : e.terms_per_con[static_cast<std::size_t>(k)]) {
        zb += a.cwiseProduct(Zinv[static_cast<std::size_t>(block)]).sum();
        ar += a.cwiseProduct(WRW[static_cast<std::size_t>(block)]).sum();
      }
      zbar(k) = zb;
      arw(k) = ar;
    }

    // Schur complement M[j][k] = sum_blocks <A_j, W A_k W>.
    RealMatrix schur = RealMatrix::Zero(m, m);
    for (std::size_t bi = 0; bi < nb; ++bi) {
      const auto& terms = e.terms_per_block[bi];
      std::vector<RealMatrix> waw(terms.size());
      for (std::size_t t = 0; t < terms.size(); ++t) {
        waw[t] = W[bi] * (*terms[t].second) * W[bi];
      }
      for (std::size_t t1 = 0; t1 < terms.size(); ++t1) {
        for (std::size_t t2 = 0; t2 < terms.size(); ++t2) {
          schur(terms[t1].first, terms[t2].first) +=
              terms[t1].second->cwiseProduct(waw[t2]).sum();
        }
      }
    }
    schur = 0.5 * (schur + schur.transpose()).eval();
    // The Schur matrix is a Gram matrix, so PSD in exact arithmetic, but
    // roundoff near a degenerate optimum can leave it numerically indefinite.
    // Retry with an escalating diagonal shift; refinement below corrects
    // against the unshifted matrix.
    Eigen::LDLT<RealMatrix> fact(schur);
    const double diag_scale = 1.0 + schur.diagonal().cwiseAbs().maxCoeff();
    for (double shift = 1e-14 * diag_scale;
         fact.info() != Eigen::Success && shift <= 1e-6 * diag_scale;
         shift *= 100) {
      fact.compute(schur + shift * RealMatrix::Identity(m, m));
    }
    if (fact.info() != Eigen::Success) break;
    const auto solve_schur = [&](const Eigen::VectorXd& rhs) {
      Eigen::VectorXd v = fact.solve(rhs);
      v += fact.solve(rhs - schur * v);  // one refinement pass
      return v;
    };

    const auto direction = [&](double sigma_mu) {
      Direction d;
      d.dy = solve_schur(e.b - sigma_mu * zbar + arw);
      d.dZ = Rd;
      for (int k = 0; k < m; ++k) {
        for (const auto& [block, a] : e.terms_per_con[static_cast<std::size_t>(k)]) {
          d.dZ[static_cast<std::size_t>(block)] -= d.dy(k) * a;
        }
      }
      d.dX.resize(nb);
      for (std::size_t i = 0; i < nb; ++i) {
        RealMatrix wdw = W[i] * d.dZ[i] * W[i];
        d.dX[i] = sigma_mu * Zinv[i] - X[i] - 0.5 * (wdw + wdw.transpose());
      }
      return d;
    };

    // Predictor fixes the centering weight, then the actual step is taken on
    // the recentered direction with a fraction-to-boundary factor.
    const Direction aff = direction(0.0);
    const double apa = max_step(X, aff.dX, 1.0);
    const double ada = max_step(Z, aff.dZ, 1.0);
    double mu_aff = 0;
    {
      Blocks xa = X, za = Z;
      for (std::size_t i = 0; i < nb; ++i) {
        xa[i] += apa * aff.dX[i];
        za[i] += ada * aff.dZ[i];
      }
      mu_aff = block_dot(xa, za) / e.n_total;
    }
    double sigma = std::pow(std::max(mu_aff, 0.0) / mu, 3.0);
    sigma = std::min(std::max(sigma, 1e-8), 0.999);

    const Direction dir = direction(sigma * mu);
    const double ap = std::min(1.0, 0.98 * max_step(X, dir.dX, 1e18));
    const double ad = std::min(1.0, 0.98 * max_step(Z, dir.dZ, 1e18));
    if (ap <= 0 || ad <= 0) break;
    for (std::size_t i = 0; i < nb; ++i) {
      X[i] += ap * dir.dX[i];
      Z[i] += ad * dir.dZ[i];
      X[i] = 0.5 * (X[i] + X[i].transpose()).eval();
      Z[i] = 0.5 * (Z[i] + Z[i].transpose()).eval();
      project_embedded(X[i]);
      project_embedded(Z[i]);
    }
    y += ad * dir.dy;
  }

  // Ran out of iterations or hit a numerical breakdown; the finalizer keeps
  // the result only if the current iterate already verifies as optimal.
  return fin.finalize(X, y, Z, std::move(trace));
}

}  // namespace steerkit
