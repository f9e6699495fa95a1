#include "steerkit/werner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <future>
#include <sstream>
#include <thread>

namespace steerkit {

namespace {

constexpr double kKappa = 1.0 / (2.0 + 1.4142135623730951);  // 1/(2+sqrt 2)

void require_visibility(double v) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream os;
    os << "visibility " << v << " outside [0, 1]";
    throw RangeError(os.str());
  }
}

Povm basis_povm(const Matrix& pauli) {
  const Matrix eye = Matrix::Identity(2, 2);
  // Outcome 1 is the -1 eigenprojector, so the steered states follow +n.
  return Povm({HermitianMatrix(0.5 * (eye - pauli)),
               HermitianMatrix(0.5 * (eye + pauli))});
}

int sweep_workers(std::size_t n_points) {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("STEERKIT_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && parsed >= 1) {
      n = static_cast<unsigned>(parsed);
    }
  }
  return static_cast<int>(std::min<std::size_t>(n, std::max<std::size_t>(n_points, 1)));
}

SweepRow sweep_point(double v, const TomoSet& tomo) {
  const Assemblage a = werner_assemblage(v);
  const RobustnessResult rr = steering_robustness(a);
  const BetaGame game = beta_from_witness(rr.witness, tomo);
  const CorrelationTable table =
      correlations(a, max_entangled_projector(a.dim()), tomo);
  const double s_mdi = std::max(mdi_ratio(table, game) - 1.0, 0.0);
  return SweepRow{v, s_mdi, rr.value, std::abs(s_mdi - rr.value)};
}

}  // namespace

DensityMatrix werner_state(double v) {
  require_visibility(v);
  Vector singlet = Vector::Zero(4);
  singlet(1) = -1.0 / std::sqrt(2.0);  // |01>
  singlet(2) = 1.0 / std::sqrt(2.0);   // |10>
  const Matrix rho = v * (singlet * singlet.adjoint()) +
                     (1.0 - v) * 0.25 * Matrix::Identity(4, 4);
  return DensityMatrix(rho);
}

Assemblage werner_assemblage(double v) {
  require_visibility(v);
  return from_state_and_measurements(
      werner_state(v), {basis_povm(pauli_x()), basis_povm(pauli_z())}, 2);
}

WitnessSet analytic_witness() {
  const Matrix eye = Matrix::Identity(2, 2);
  std::vector<HermitianMatrix> f;
  for (const Matrix& pauli : {pauli_x(), pauli_z()}) {
    f.emplace_back(kKappa * (eye + pauli));  // a = 1
    f.emplace_back(kKappa * (eye - pauli));  // a = 2
  }
  return WitnessSet(2, 2, 2, std::move(f), WitnessNormalization::SRdual);
}

BetaGame werner_beta_game() {
  TomoSet tomo = pauli_tomo_set();
  std::vector<double> beta(static_cast<std::size_t>(2 * 2 * tomo.size()), 0.0);
  // (x, a) -> single tomography state: (1,1)->X+, (1,2)->X-, (2,1)->Z+, (2,2)->Z-.
  auto idx = [&](int x, int a, int y) {
    return (static_cast<std::size_t>(x - 1) * 2 + (a - 1)) *
               static_cast<std::size_t>(tomo.size()) +
           static_cast<std::size_t>(y - 1);
  };
  beta[idx(1, 1, 1)] = 2 * kKappa;
  beta[idx(1, 2, 2)] = 2 * kKappa;
  beta[idx(2, 1, 3)] = 2 * kKappa;
  beta[idx(2, 2, 4)] = 2 * kKappa;
  return BetaGame(std::move(tomo), 2, 2, std::move(beta));
}

BetaGame werner_beta_game_alternate() {
  TomoSet tomo = pauli_tomo_set();
  std::vector<double> beta(static_cast<std::size_t>(2 * 2 * tomo.size()), 0.0);
  auto idx = [&](int x, int a, int y) {
    return (static_cast<std::size_t>(x - 1) * 2 + (a - 1)) *
               static_cast<std::size_t>(tomo.size()) +
           static_cast<std::size_t>(y - 1);
  };
  beta[idx(1, 1, 1)] = 2 * kKappa;
  beta[idx(1, 2, 2)] = 2 * kKappa;
  // Z-setting elements spread over X+, X-, Z+, Z-: the X parts sum to the
  // identity and the signed Z parts supply the +-pauli_z component.
  for (int a : {1, 2}) {
    beta[idx(2, a, 1)] = kKappa;
    beta[idx(2, a, 2)] = kKappa;
  }
  beta[idx(2, 1, 3)] = kKappa;
  beta[idx(2, 1, 4)] = -kKappa;
  beta[idx(2, 2, 3)] = -kKappa;
  beta[idx(2, 2, 4)] = kKappa;
  return BetaGame(std::move(tomo), 2, 2, std::move(beta));
}

std::vector<SweepRow> visibility_sweep(const std::vector<double>& grid,
                                       const TomoSet& tomo) {
  for (double v : grid) require_visibility(v);
  std::vector<SweepRow> rows(grid.size());
  const int workers = sweep_workers(grid.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) rows[i] = sweep_point(grid[i], tomo);
  } else {
    std::atomic<std::size_t> next{0};
    auto drain = [&]() {
      for (std::size_t i = next.fetch_add(1); i < grid.size();
           i = next.fetch_add(1)) {
        rows[i] = sweep_point(grid[i], tomo);
      }
    };
    std::vector<std::future<void>> tasks;
    for (int w = 1; w < workers; ++w) {
      tasks.push_back(std::async(std::launch::async, drain));
    }
    drain();
    for (auto& t : tasks) t.get();
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SweepRow& l, const SweepRow& r) { return l.v < r.v; });
  return rows;
}

std::vector<SweepRow> visibility_sweep(const std::vector<double>& grid) {
  return visibility_sweep(grid, pauli_tomo_set());
}

}  // namespace steerkit
