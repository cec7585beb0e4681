#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "ladhtp/quantile.hpp"
#include "oracles.hpp"

using namespace ladhtp;

TEST_CASE("empirical_quantile examples") {
  CHECK(empirical_quantile(Vector{1, 2, 3, 4}, 0.5) == 2);
  CHECK(empirical_quantile(Vector{5}, 0.3) == 5);
  CHECK(empirical_quantile(Vector{3, 1, 2}, 0.99) == 3);
  CHECK_THROWS_AS(empirical_quantile(Vector{}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(empirical_quantile(Vector{1}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(empirical_quantile(Vector{1}, 1.0), std::invalid_argument);
}

TEST_CASE("quantile rank treats an integral tau*m as exact") {
  CHECK(quantile_rank(10, 0.3) == 3);  // 0.3 * 10 = 3.0000000000000004
  CHECK(quantile_rank(10, 0.31) == 4);
  CHECK(quantile_rank(4, 0.5) == 2);
  CHECK(quantile_rank(3, 0.01) == 1);
}

TEST_CASE("truncated_l1 examples") {
  auto t = truncated_l1(Vector{1, -2, 10}, 0.5);
  CHECK(t.threshold == 2);
  CHECK(t.mask == SupportSet{0, 1});
  CHECK(t.value == 3);

  t = truncated_l1(Vector{0, 0, 0, 0}, 0.5);
  CHECK(t.value == 0);
  CHECK(t.threshold == 0);
  CHECK(t.mask == SupportSet{0, 1, 2, 3});

  t = truncated_l1(Vector{-4}, 0.9);
  CHECK(t.threshold == 4);
  CHECK(t.value == 4);
}

TEST_CASE("quantile properties") {
  std::mt19937_64 gen(21);
  std::uniform_int_distribution<std::size_t> len(1, 200);
  std::uniform_real_distribution<double> unit(0.001, 0.999);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t m = len(gen);
    Vector v(m);
    for (double& x : v) x = trial % 3 == 0 ? std::round(gauss(gen) * 2) : gauss(gen);
    const double tau = unit(gen);
    const std::size_t k = static_cast<std::size_t>(std::ceil(tau * static_cast<double>(m) - 1e-9));
    REQUIRE(empirical_quantile(v, tau) == oracle::order_statistic(v, std::max<std::size_t>(k, 1)));

    const double tau2 = std::min(0.999, tau + unit(gen) * (1 - tau));
    CHECK(empirical_quantile(v, tau) <= empirical_quantile(v, tau2));

    const auto t = truncated_l1(v, tau);
    CHECK(t.mask.size() >= quantile_rank(m, tau));
    double sum = 0, total = 0;
    for (std::size_t i = 0; i < m; ++i) {
      total += std::abs(v[i]);
      const bool in = std::binary_search(t.mask.begin(), t.mask.end(), i);
      CHECK(in == (std::abs(v[i]) <= t.threshold));
      if (in) sum += std::abs(v[i]);
    }
    CHECK(t.value == doctest::Approx(sum).epsilon(1e-12));
    CHECK(t.value <= total * (1 + 1e-12));
    if (t.mask.size() == m) CHECK(t.value == doctest::Approx(total).epsilon(1e-12));
    else CHECK(t.value < total);
    CHECK(truncated_l1_value(v, tau) == t.value);

    const double c = gauss(gen) * 5;
    Vector scaled(m);
    for (std::size_t i = 0; i < m; ++i) scaled[i] = c * v[i];
    CHECK(truncated_l1(scaled, tau).value ==
          doctest::Approx(std::abs(c) * t.value).epsilon(1e-12));
  }
}
