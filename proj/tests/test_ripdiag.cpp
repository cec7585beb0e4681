#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ladhtp/probgen.hpp"
#include "ladhtp/ripdiag.hpp"
#include "ladhtp/stepsize.hpp"

using namespace ladhtp;

TEST_CASE("single isometric column gives zero") {
  // sqrt(pi/2) * ||a||_1 = 1.
  const double c = 1.0 / kSqrtHalfPi;
  const DenseMatrix A(3, 1, {0.25 * c, -0.5 * c, 0.25 * c});
  const auto est = estimate_ric1(A, 1, 50, 3);
  CHECK(est.delta_hat == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("s = 1 matches exhaustive enumeration of the columns") {
  const DenseMatrix A(3, 4, {0.3, -0.1, 0.7, 0.2, -0.4, 0.5, 0.1, -0.9, 0.2, 0.2, -0.3, 0.05});
  const auto est = estimate_ric1(A, 1, 1000, 17);
  // Independent enumeration.
  double worst = 0;
  for (std::size_t j = 0; j < 4; ++j) {
    double l1 = 0;
    for (std::size_t i = 0; i < 3; ++i) l1 += std::abs(A(i, j));
    worst = std::max(worst, std::abs(std::sqrt(std::acos(-1.0) / 2) * l1 - 1));
  }
  CHECK(std::abs(est.delta_hat - worst) <= 1e-12);
  CHECK(std::abs(ric1_order1_exact(A) - worst) <= 1e-12);
}

TEST_CASE("estimator properties") {
  ProblemSpec sp;
  sp.m = 100;
  sp.n = 300;
  sp.s = 0;
  sp.outliers = OutlierKind::None;
  sp.seed = 4;
  const auto A = generate(sp).A;

  double prev = -1;
  for (std::size_t samples : {1u, 100u, 1024u, 1500u, 4000u}) {
    const auto est = estimate_ric1(A, 3, samples, 99);
    CHECK(est.delta_hat >= prev);
    prev = est.delta_hat;
    CHECK(est.worst_support.size() == 3);
    CHECK(ric_deviation(A, est.worst_direction) == doctest::Approx(est.delta_hat).epsilon(1e-12));
    CHECK(norm2(est.worst_direction) == doctest::Approx(1.0).epsilon(1e-12));
  }
  const auto serial = estimate_ric1(A, 3, 5000, 8, RicSampling::Gaussian, 1);
  const auto parallel = estimate_ric1(A, 3, 5000, 8, RicSampling::Gaussian, 4);
  CHECK(serial.delta_hat == parallel.delta_hat);
  CHECK(serial.worst_support == parallel.worst_support);

  const auto vertex = estimate_ric1(A, 3, 2000, 8, RicSampling::Vertex);
  CHECK(vertex.delta_hat >= 0);
  CHECK(ric_deviation(A, vertex.worst_direction) == doctest::Approx(vertex.delta_hat).epsilon(1e-12));

  CHECK_THROWS_AS(estimate_ric1(A, 301, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(estimate_ric1(A, 0, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(estimate_ric1(A, 2, 0, 1), std::invalid_argument);
}
