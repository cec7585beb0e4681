#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "ladhtp/core.hpp"
#include "ladhtp/stepsize.hpp"
#include "oracles.hpp"

using namespace ladhtp;

TEST_CASE("oracle CDF agrees with the library CDF") {
  for (double z = -6; z <= 6; z += 0.25)
    CHECK(oracle::normal_cdf(z) == doctest::Approx(normal_cdf(z)).epsilon(1e-12));
}

TEST_CASE("normal_inverse_cdf examples") {
  CHECK(normal_inverse_cdf(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  // Frozen from bisection on the series/continued-fraction CDF.
  CHECK(std::abs(normal_inverse_cdf(0.775) - 0.7554150) < 1e-7);
  CHECK(std::abs(normal_inverse_cdf(0.975) - 1.9599640) < 1e-7);
  CHECK(std::abs(oracle::normal_quantile(0.775) - 0.7554150) < 1e-7);
  CHECK(std::abs(oracle::normal_quantile(0.975) - 1.9599640) < 1e-7);
  CHECK_THROWS_AS(normal_inverse_cdf(0.0), std::invalid_argument);
  CHECK_THROWS_AS(normal_inverse_cdf(1.0), std::invalid_argument);
}

TEST_CASE("normal_inverse_cdf round trip and bisection agreement") {
  for (int i = 1; i <= 99; ++i) {
    const double q = i / 100.0;
    const double z = normal_inverse_cdf(q);
    CHECK(std::abs(oracle::normal_cdf(z) - q) <= 1e-7);
    CHECK(std::abs(z - oracle::normal_quantile(q)) <= 1e-7);
  }
  for (double q : {1e-6, 1e-5, 1e-3, 0.02425, 1 - 0.02425, 1 - 1e-3, 1 - 1e-6}) {
    CHECK(std::abs(normal_inverse_cdf(q) - oracle::normal_quantile(q)) <= 1e-7);
  }
}

TEST_CASE("adaptive_step examples") {
  CHECK(adaptive_step(Vector{0, 0, 0}, 0.5, 6) == 0);
  CHECK(adaptive_step(Vector{1, -2, 10}, 0.5, 1) == doctest::Approx(3.7599424).epsilon(1e-7));
  CHECK(adaptive_step(Vector{-4}, 0.9, 2) == doctest::Approx(10.0265131).epsilon(1e-7));
  CHECK_THROWS_AS(adaptive_step(Vector{1}, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("adaptive_step is positively homogeneous") {
  std::mt19937_64 gen(5);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 200; ++trial) {
    Vector r(1 + trial % 40);
    for (double& v : r) v = gauss(gen);
    const double c = std::exp(gauss(gen));
    Vector cr(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) cr[i] = c * r[i];
    CHECK(adaptive_step(cr, 0.5, 6) == doctest::Approx(c * adaptive_step(r, 0.5, 6)).epsilon(1e-12));
  }
}

namespace {

FeasibilityParams params(FeasibilityVariant v, double tau, double p) {
  FeasibilityParams f;
  f.variant = v;
  f.tau = tau;
  f.p = p;
  f.epsilon = 0.001;
  f.delta = 0.01;
  f.t1_ratio = 0.001;
  f.lambda = 1.0;
  return f;
}

}  // namespace

TEST_CASE("feasible_mu_range reproduces the published intervals") {
  struct Case {
    FeasibilityVariant v;
    double tau, p, lo, hi;
  };
  const Case cases[] = {
      {FeasibilityVariant::General, 0.5, 0.05, 1.3695, 3.3362},
      {FeasibilityVariant::General, 0.1, 0.2, 8.7136, 50.2541},
      {FeasibilityVariant::Flat, 0.4, 0.01, 1.4444, 4.8518},
      {FeasibilityVariant::Flat, 0.1, 0.15, 7.4256, 43.0710},
  };
  for (const auto& c : cases) {
    const MuInterval iv = feasible_mu_range(params(c.v, c.tau, c.p));
    REQUIRE(iv.feasible);
    CHECK(std::abs(iv.lo - c.lo) <= 1e-3);
    CHECK(std::abs(iv.hi - c.hi) <= 1e-3);
  }
}

TEST_CASE("interval endpoints are roots of the quadratic") {
  for (double tau = 0.1; tau <= 0.7; tau += 0.05) {
    for (double p = 0.0; p < 0.45; p += 0.02) {
      auto f = params(FeasibilityVariant::General, tau, p);
      if (!(tau + p < 1)) continue;
      const auto iv = feasible_mu_range(f);
      if (!iv.feasible) continue;
      const auto q = mu_quadratic(f);
      const double scale = q.a * iv.hi * iv.hi + q.b * iv.hi + q.c0;
      CHECK(q(0.5 * (iv.lo + iv.hi)) < 0);
      CHECK(std::abs(q(iv.lo)) <= 1e-9 * scale);
      CHECK(std::abs(q(iv.hi)) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("feasible interval shrinks as delta or p grows") {
  for (auto variant : {FeasibilityVariant::General, FeasibilityVariant::Flat}) {
    for (double tau : {0.2, 0.35, 0.5}) {
      MuInterval prev{};
      bool first = true;
      for (double p = 0.0; p < std::min(tau, 0.45); p += 0.01) {
        const auto iv = feasible_mu_range(params(variant, tau, p));
        if (!first && !prev.feasible) CHECK_FALSE(iv.feasible);
        if (!first && iv.feasible) CHECK(iv.hi - iv.lo <= prev.hi - prev.lo + 1e-12);
        if (!first && iv.feasible) CHECK(iv.lo >= prev.lo - 1e-12);
        if (!first && iv.feasible) CHECK(iv.hi <= prev.hi + 1e-12);
        prev = iv;
        first = false;
      }
      prev = {};
      first = true;
      for (double delta = 0.005; delta < 0.25; delta += 0.005) {
        auto f = params(variant, tau, 0.05);
        f.delta = delta;
        if (!(f.p < 0.5 - delta / (1 - delta))) break;
        const auto iv = feasible_mu_range(f);
        if (!first && !prev.feasible) CHECK_FALSE(iv.feasible);
        if (!first && iv.feasible) CHECK(iv.lo >= prev.lo - 1e-12);
        if (!first && iv.feasible) CHECK(iv.hi <= prev.hi + 1e-12);
        prev = iv;
        first = false;
      }
    }
  }
}

TEST_CASE("feasibility parameter validation") {
  CHECK_THROWS_AS(feasible_mu_range(params(FeasibilityVariant::General, 0.7, 0.3)), std::invalid_argument);
  CHECK_THROWS_AS(feasible_mu_range(params(FeasibilityVariant::General, 0.95, 0.1)), std::invalid_argument);
  auto f = params(FeasibilityVariant::General, 0.5, 0.05);
  f.delta = 0.3;
  CHECK_THROWS_AS(feasible_mu_range(f), std::invalid_argument);
  f = params(FeasibilityVariant::Flat, 0.5, 0.05);
  f.lambda = 0.5;
  CHECK_THROWS_AS(feasible_mu_range(f), std::invalid_argument);
}

TEST_CASE("max_p_grid") {
  const auto taus = linspace_step(0.1, 0.1, 0.7);
  const auto ps = linspace_step(0.001, 0.001, 0.5);
  const auto base = params(FeasibilityVariant::General, 0.5, 0.0);
  const auto grid = max_p_grid(taus, ps, base);
  REQUIRE(grid.cells.size() == taus.size() * ps.size());
  REQUIRE(grid.max_p.size() == taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (std::abs(taus[i] - 0.5) < 1e-9) {
      REQUIRE(grid.max_p[i]);
      CHECK(*grid.max_p[i] >= 0.05);
    }
    if (std::abs(taus[i] - 0.1) < 1e-9) {
      REQUIRE(grid.max_p[i]);
      CHECK(*grid.max_p[i] >= 0.2);
    }
  }
  for (const auto& c : grid.cells)
    if (c.tau + c.p >= 1) CHECK_FALSE(c.interval.feasible);

  const std::string csv = max_p_grid_csv(grid);
  CHECK(csv.rfind("tau,p,feasible,mu_lo,mu_hi\n", 0) == 0);
  CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) == grid.cells.size() + 1);

  auto bad = base;
  bad.delta = 0.5;
  CHECK_THROWS_AS(max_p_grid(taus, ps, bad), std::invalid_argument);
}

TEST_CASE("linspace_step is inclusive") {
  const auto v = linspace_step(0.1, 0.001, 0.7);
  CHECK(v.size() == 601);
  CHECK(v.back() == doctest::Approx(0.7));
}
