#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <string>

#include "steerkit/assemblage.hpp"
#include "steerkit/werner.hpp"
#include "support/random_instances.hpp"

using namespace steerkit;

namespace {

double dev(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// White-noise assemblage: sigma(a|x) = 1/4 for |X| = |A| = dim = 2.
Assemblage white_noise() {
  std::vector<HermitianMatrix> els(
      4, HermitianMatrix(Matrix(0.25 * Matrix::Identity(2, 2))));
  return Assemblage(2, 2, 2, std::move(els));
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("enumerate_strategies counts and ordering") {
  CHECK(enumerate_strategies(2, 2).size() == 4);
  CHECK(enumerate_strategies(1, 3).size() == 3);
  CHECK(enumerate_strategies(3, 2).size() == 8);

  // Encoding sum_x (a_x - 1)|A|^(x-1): x = 1 varies fastest.
  const auto s22 = enumerate_strategies(2, 2);
  CHECK(s22[0].outcome(1) == 1);
  CHECK(s22[0].outcome(2) == 1);
  CHECK(s22[1].outcome(1) == 2);
  CHECK(s22[1].outcome(2) == 1);
  CHECK(s22[2].outcome(1) == 1);
  CHECK(s22[2].outcome(2) == 2);
  CHECK(s22[3].outcome(1) == 2);
  CHECK(s22[3].outcome(2) == 2);
  for (std::size_t l = 0; l < s22.size(); ++l) {
    CHECK(s22[l].encoding(2) == static_cast<long>(l));
  }
  const auto s32 = enumerate_strategies(3, 2);
  for (std::size_t l = 0; l < s32.size(); ++l) {
    CHECK(s32[l].encoding(2) == static_cast<long>(l));
  }

  // response is the indicator of the assigned outcome.
  CHECK(s22[1].response(2, 1) == 1);
  CHECK(s22[1].response(1, 1) == 0);
  CHECK(s22[1].response(1, 2) == 1);

  CHECK_THROWS_AS(enumerate_strategies(21, 2), TooManyStrategiesError);
  CHECK_THROWS_AS(enumerate_strategies(0, 2), ValidationError);
}

TEST_CASE("Assemblage validation names the violated invariant") {
  CHECK_NOTHROW(white_noise());

  // Positivity violation at (x=1, a=2).
  Matrix neg(2, 2);
  neg << 0.5, 0, 0, -0.25;
  auto bad_psd = [&] {
    std::vector<HermitianMatrix> els{
        HermitianMatrix(Matrix((0.5 + 0.25) * Matrix::Identity(2, 2) - neg)),
        HermitianMatrix(neg),
        HermitianMatrix(Matrix(0.375 * Matrix::Identity(2, 2))),
        HermitianMatrix(Matrix(0.375 * Matrix::Identity(2, 2)))};
    Assemblage(2, 2, 2, std::move(els));
  };
  CHECK_THROWS_AS(bad_psd(), ValidationError);
  const std::string psd_msg = message_of(bad_psd);
  CHECK(psd_msg.find("positivity") != std::string::npos);
  CHECK(psd_msg.find("x=1") != std::string::npos);
  CHECK(psd_msg.find("a=2") != std::string::npos);

  // Signaling between settings 1 and 2.
  auto signaling = [&] {
    std::vector<HermitianMatrix> els{
        HermitianMatrix(Matrix(0.25 * Matrix::Identity(2, 2))),
        HermitianMatrix(Matrix(0.25 * Matrix::Identity(2, 2))),
        HermitianMatrix(Matrix(0.30 * Matrix::Identity(2, 2))),
        HermitianMatrix(Matrix(0.25 * Matrix::Identity(2, 2)))};
    Assemblage(2, 2, 2, std::move(els));
  };
  CHECK_THROWS_AS(signaling(), ValidationError);
  CHECK(message_of(signaling).find("no-signaling") != std::string::npos);

  // Reduced state trace != 1.
  auto unnormalized = [&] {
    std::vector<HermitianMatrix> els(
        4, HermitianMatrix(Matrix(0.3 * Matrix::Identity(2, 2))));
    Assemblage(2, 2, 2, std::move(els));
  };
  CHECK_THROWS_AS(unnormalized(), ValidationError);
  CHECK(message_of(unnormalized).find("normalization") != std::string::npos);

  // Wrong element count.
  auto short_list = [&] {
    std::vector<HermitianMatrix> els(
        3, HermitianMatrix(Matrix(0.25 * Matrix::Identity(2, 2))));
    Assemblage(2, 2, 2, std::move(els));
  };
  CHECK_THROWS_AS(short_list(), ValidationError);

  Assemblage ok = white_noise();
  CHECK_THROWS_AS(ok.at(3, 1), IndexError);
  CHECK_THROWS_AS(ok.at(1, 0), IndexError);
  CHECK(dev(ok.reduced_state(), 0.5 * Matrix::Identity(2, 2)) == 0.0);
}

TEST_CASE("LhsModel reconstructs and validates") {
  // Four equal hidden states 1/8 reproduce the white-noise assemblage.
  std::vector<HermitianMatrix> states(
      4, HermitianMatrix(Matrix(0.125 * Matrix::Identity(2, 2))));
  LhsModel model(2, 2, 2, states);
  CHECK(dev(model.reconstruct(1, 1), 0.25 * Matrix::Identity(2, 2)) == 0.0);
  CHECK(model.reconstruction_error(white_noise()) < 1e-15);

  // Total weight must be 1.
  std::vector<HermitianMatrix> heavy(
      4, HermitianMatrix(Matrix(0.25 * Matrix::Identity(2, 2))));
  CHECK_THROWS_AS(LhsModel(2, 2, 2, heavy), ValidationError);
  // One state per strategy.
  CHECK_THROWS_AS(LhsModel(2, 2, 2, std::vector<HermitianMatrix>(
                               3, HermitianMatrix::zero(2))),
                  ValidationError);
  // Hidden states must be PSD (total weight kept at 1 to isolate the check).
  std::vector<HermitianMatrix> indefinite{
      HermitianMatrix(Matrix(0.5 * pauli_z())),
      HermitianMatrix(Matrix((1.0 / 6) * Matrix::Identity(2, 2))),
      HermitianMatrix(Matrix((1.0 / 6) * Matrix::Identity(2, 2))),
      HermitianMatrix(Matrix((1.0 / 6) * Matrix::Identity(2, 2)))};
  CHECK_THROWS_AS(LhsModel(2, 2, 2, indefinite), ValidationError);
}

TEST_CASE("from_state_and_measurements basic factorizations") {
  testsupport::Rng rng(71);
  // Maximally mixed state: sigma(a|x) = tr(E(a|x)) 1/4; projective => 1/4.
  DensityMatrix mixed(Matrix(0.25 * Matrix::Identity(4, 4)));
  std::vector<Povm> povms{testsupport::random_projective_povm(2, rng),
                          testsupport::random_projective_povm(2, rng)};
  Assemblage a = from_state_and_measurements(mixed, povms, 2);
  for (int x = 1; x <= 2; ++x) {
    for (int aa = 1; aa <= 2; ++aa) {
      CHECK(dev(a.at(x, aa).mat(), 0.25 * Matrix::Identity(2, 2)) < 1e-12);
    }
  }

  // Product state: sigma(a|x) = tr(rho_A E(a|x)) rho_B.
  DensityMatrix ra = testsupport::random_density_matrix(2, rng);
  DensityMatrix rb = testsupport::random_density_matrix(2, rng);
  DensityMatrix joint(Matrix(tensor(ra.mat(), rb.mat())));
  Assemblage prod = from_state_and_measurements(joint, povms, 2);
  for (int x = 1; x <= 2; ++x) {
    for (int aa = 1; aa <= 2; ++aa) {
      const double w =
          (ra.mat() * povms[static_cast<std::size_t>(x - 1)].element(aa).mat())
              .trace()
              .real();
      CHECK(dev(prod.at(x, aa).mat(), w * rb.mat()) < 1e-12);
    }
  }

  // Dimension and shape errors.
  CHECK_THROWS_AS(from_state_and_measurements(mixed, povms, 3),
                  DimensionError);
  std::vector<Povm> mismatched{
      povms[0], Povm({HermitianMatrix::identity(2)})};
  CHECK_THROWS_AS(from_state_and_measurements(mixed, mismatched, 2),
                  ValidationError);
}

TEST_CASE("from_state_and_measurements always yields valid assemblages") {
  testsupport::Rng rng(81);
  for (int k = 0; k < 25; ++k) {
    const int n_settings = 2 + (k % 2);
    CHECK_NOTHROW(testsupport::random_state_assemblage(n_settings, rng, 0.5));
  }
}

TEST_CASE("is_unsteerable on the closed-form family") {
  UnsteerabilityResult noise = is_unsteerable(white_noise());
  CHECK(noise.unsteerable);
  REQUIRE(noise.model.has_value());
  CHECK(noise.model->reconstruction_error(white_noise()) < 1e-7);

  CHECK_FALSE(is_unsteerable(werner_assemblage(1.0)).unsteerable);

  const Assemblage boundary_below = werner_assemblage(0.70);
  UnsteerabilityResult r = is_unsteerable(boundary_below);
  CHECK(r.unsteerable);
  REQUIRE(r.model.has_value());
  CHECK(r.model->reconstruction_error(boundary_below) < 1e-7);
}

TEST_CASE("LHS-constructed assemblages are unsteerable") {
  testsupport::Rng rng(91);
  for (int k = 0; k < 5; ++k) {
    Assemblage a = testsupport::random_lhs_assemblage(2, 2, 2, rng);
    UnsteerabilityResult r = is_unsteerable(a);
    CHECK(r.unsteerable);
    REQUIRE(r.model.has_value());
    CHECK(r.model->reconstruction_error(a) < 1e-7);
  }
}
