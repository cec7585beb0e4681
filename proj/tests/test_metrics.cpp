#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "ladhtp/metrics.hpp"

using namespace ladhtp;

TEST_CASE("rel_err") {
  const std::vector<double> x0{1, -2, 3};
  CHECK(rel_err(x0, x0) == 0);
  CHECK(rel_err(std::vector<double>{0, 1}, std::vector<double>{1, 0}) == doctest::Approx(std::sqrt(2.0)));
  CHECK(rel_err(std::vector<double>{2, -4, 6}, x0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(rel_err(x0, std::vector<double>{0, 0, 0}), std::invalid_argument);
}

TEST_CASE("snr_db") {
  const std::vector<double> x0{3, 4};
  CHECK(snr_db(x0, x0) == kSnrCapDb);
  CHECK(snr_db(std::vector<double>{3.3, 4.4}, x0) == doctest::Approx(20.0));
  CHECK(snr_db(std::vector<double>{3 * (1 + 1e-5), 4 * (1 + 1e-5)}, x0) == doctest::Approx(100.0).epsilon(1e-6));
  CHECK_THROWS_AS(snr_db(x0, std::vector<double>{0, 0}), std::invalid_argument);

  std::mt19937_64 gen(1);
  std::normal_distribution<double> g;
  for (int t = 0; t < 100; ++t) {
    std::vector<double> a(5), b(5);
    for (double& v : a) v = g(gen);
    for (double& v : b) v = g(gen);
    CHECK(snr_db(a, b) == doctest::Approx(-20 * std::log10(rel_err(a, b))).epsilon(1e-12));
  }
}

TEST_CASE("success threshold is inclusive") {
  const std::vector<double> x0{1, 0};
  const std::vector<double> at{1 + 1e-4, 0};
  const auto o = make_outcome("X", at, x0, 0.0, rel_err(at, x0));
  CHECK(o.success);
  CHECK_FALSE(make_outcome("X", at, x0, 0.0, 0.5e-4).success);
}

TEST_CASE("success_rate") {
  auto outcome = [](bool ok) {
    TrialOutcome o;
    o.success = ok;
    return o;
  };
  std::vector<TrialOutcome> all{outcome(true), outcome(true)};
  CHECK(success_rate(all) == 1.0);
  std::vector<TrialOutcome> none{outcome(false)};
  CHECK(success_rate(none) == 0.0);
  std::vector<TrialOutcome> three{outcome(true), outcome(false), outcome(true), outcome(true)};
  CHECK(success_rate(three) == 0.75);
  std::reverse(three.begin(), three.end());
  CHECK(success_rate(three) == 0.75);
  CHECK_THROWS_AS(success_rate(std::vector<TrialOutcome>{}), std::invalid_argument);
}
