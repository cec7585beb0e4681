#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ladhtp {

/// Standard normal CDF.
double normal_cdf(double z);

/// Phi^{-1}(q) for q in (0,1). Rational approximation (Acklam) polished by one
/// Halley step on Phi; absolute error well below 1e-9 over [1e-6, 1-1e-6].
double normal_inverse_cdf(double q);

/// Truncated adaptive step mu * sqrt(pi/2) * truncated_l1(r, tau).
double adaptive_step(std::span<const double> r, double tau, double mu);

inline constexpr double kSqrtHalfPi = 1.2533141373155002512;  // sqrt(pi/2)

enum class FeasibilityVariant { General, Flat };

/**
 * Inputs of the step-coefficient feasibility condition.
 *
 * General: rho = 1 + a mu^2 - b mu < 1/3 (error contraction for arbitrary
 * sparse signals). Flat: the analogous condition with bound 1/(2 + lambda^2)
 * for signals whose nonzeros are within a factor lambda of each other.
 */
struct FeasibilityParams {
  double tau = 0.5;
  double p = 0.05;
  double epsilon = 1e-3;
  double delta = 0.01;     ///< RIC_1 value, in (0, 0.25)
  double t1_ratio = 1e-3;  ///< |T_1| / m
  double lambda = 1.0;     ///< flatness ratio, Flat variant only
  FeasibilityVariant variant = FeasibilityVariant::General;
};

struct MuInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool feasible = false;
};

/// Quadratic coefficients of a mu^2 - b mu + c0 < 0.
struct MuQuadratic {
  double a = 0.0;
  double b = 0.0;
  double c0 = 0.0;
  double operator()(double mu) const { return a * mu * mu - b * mu + c0; }
};

/// Throws std::invalid_argument when tau + p < 1, delta in (0, 0.25),
/// p < 1/2 - delta/(1-delta), epsilon > 0, t1_ratio >= 0 or lambda >= 1 fails.
void validate(const FeasibilityParams& params);

MuQuadratic mu_quadratic(const FeasibilityParams& params);

/// Open interval of mu satisfying the condition, or feasible = false.
MuInterval feasible_mu_range(const FeasibilityParams& params);

struct MaxPCell {
  double tau;
  double p;
  MuInterval interval;
};

struct MaxPGrid {
  std::vector<MaxPCell> cells;                 ///< tau-major, p-minor
  std::vector<double> taus;
  std::vector<std::optional<double>> max_p;    ///< largest feasible p per tau
};

/// Evaluates feasible_mu_range on a (tau, p) grid. Cells violating the
/// (tau, p) window are reported infeasible; the fixed fields of `base`
/// (epsilon, delta, t1_ratio, lambda, variant) are validated once.
MaxPGrid max_p_grid(std::span<const double> tau_grid, std::span<const double> p_grid,
                    const FeasibilityParams& base);

/// CSV with header tau,p,feasible,mu_lo,mu_hi.
std::string max_p_grid_csv(const MaxPGrid& grid);

/// lo:step:hi inclusive, using integer stepping to avoid drift.
std::vector<double> linspace_step(double lo, double step, double hi);

}  // namespace ladhtp
