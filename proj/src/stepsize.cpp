#include "ladhtp/stepsize.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ladhtp/quantile.hpp"

namespace ladhtp {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_inverse_cdf(double q) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("normal_inverse_cdf: q must lie in (0,1)");

  static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02,
                                           -2.759285104469687e+02, 1.383577518672690e+02,
                                           -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02,
                                           -1.556989798598866e+02, 6.680131188771972e+01,
                                           -1.328068155288572e+01};
  static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01,
                                           -2.400758277161838e+00, -2.549732539343734e+00,
                                           4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01,
                                           2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double z;
  if (q < p_low) {
    const double t = std::sqrt(-2.0 * std::log(q));
    z = (((((c[0] * t + c[1]) * t + c[2]) * t + c[3]) * t + c[4]) * t + c[5]) /
        ((((d[0] * t + d[1]) * t + d[2]) * t + d[3]) * t + 1.0);
  } else if (q <= 1.0 - p_low) {
    const double u = q - 0.5;
    const double t = u * u;
    z = (((((a[0] * t + a[1]) * t + a[2]) * t + a[3]) * t + a[4]) * t + a[5]) * u /
        (((((b[0] * t + b[1]) * t + b[2]) * t + b[3]) * t + b[4]) * t + 1.0);
  } else {
    const double t = std::sqrt(-2.0 * std::log1p(-q));
    z = -(((((c[0] * t + c[1]) * t + c[2]) * t + c[3]) * t + c[4]) * t + c[5]) /
        ((((d[0] * t + d[1]) * t + d[2]) * t + d[3]) * t + 1.0);
  }

  // Halley refinement.
  const double e = normal_cdf(z) - q;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * z * z);
  return z - u / (1.0 + 0.5 * z * u);
}

double adaptive_step(std::span<const double> r, double tau, double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("adaptive_step: mu must be positive");
  return mu * kSqrtHalfPi * truncated_l1_value(r, tau);
}

void validate(const FeasibilityParams& f) {
  auto fail = [](const char* msg) { throw std::invalid_argument(msg); };
  if (!(f.tau > 0.0 && f.tau < 1.0)) fail("feasibility: tau must lie in (0,1)");
  if (!(f.p >= 0.0 && f.p < 0.5)) fail("feasibility: p must lie in [0, 0.5)");
  if (!(f.tau + f.p < 1.0)) fail("feasibility: requires tau + p < 1");
  if (!(f.epsilon > 0.0)) fail("feasibility: epsilon must be positive");
  if (!(f.delta > 0.0 && f.delta < 0.25)) fail("feasibility: delta must lie in (0, 0.25)");
  if (!(f.p < 0.5 - f.delta / (1.0 - f.delta))) fail("feasibility: requires p < 1/2 - delta/(1-delta)");
  if (!(f.t1_ratio >= 0.0)) fail("feasibility: t1_ratio must be nonnegative");
  if (f.variant == FeasibilityVariant::Flat && !(f.lambda >= 1.0)) fail("feasibility: lambda must be >= 1");
}

MuQuadratic mu_quadratic(const FeasibilityParams& f) {
  validate(f);
  const double z = normal_inverse_cdf((1.0 + f.tau + f.p) / 2.0) + f.epsilon;
  const double c = (2.0 - 2.0 * f.p) * (1.0 - f.delta) - (1.0 + f.delta);
  const double lead = f.tau * f.tau * z * z * (1.0 + f.delta) * (1.0 + f.delta);

  MuQuadratic out;
  out.b = 2.0 * c * std::sqrt(2.0 / std::numbers::pi) * (f.tau - f.t1_ratio) * (1.0 - f.delta);
  if (f.variant == FeasibilityVariant::General) {
    out.a = lead;
    out.c0 = 1.0 - 1.0 / 3.0;
  } else {
    out.a = 2.0 * lead;
    out.c0 = 1.0 - 1.0 / (2.0 + f.lambda * f.lambda);
  }
  return out;
}

MuInterval feasible_mu_range(const FeasibilityParams& params) {
  const MuQuadratic q = mu_quadratic(params);
  const double disc = q.b * q.b - 4.0 * q.a * q.c0;
  // Both roots share the sign of b since a, c0 > 0.
  if (!(disc > 0.0) || !(q.b > 0.0)) return {};
  const double root = std::sqrt(disc);
  return {(q.b - root) / (2.0 * q.a), (q.b + root) / (2.0 * q.a), true};
}

MaxPGrid max_p_grid(std::span<const double> tau_grid, std::span<const double> p_grid,
                    const FeasibilityParams& base) {
  {
    // Validate the fixed fields at a point that always satisfies the window.
    FeasibilityParams probe = base;
    probe.tau = 0.5;
    probe.p = 0.0;
    validate(probe);
  }
  MaxPGrid grid;
  grid.taus.assign(tau_grid.begin(), tau_grid.end());
  grid.cells.reserve(tau_grid.size() * p_grid.size());
  for (double tau : tau_grid) {
    std::optional<double> best;
    for (double p : p_grid) {
      FeasibilityParams f = base;
      f.tau = tau;
      f.p = p;
      MuInterval iv;
      try {
        iv = feasible_mu_range(f);
      } catch (const std::invalid_argument&) {
        iv = {};
      }
      if (iv.feasible && (!best || p > *best)) best = p;
      grid.cells.push_back({tau, p, iv});
    }
    grid.max_p.push_back(best);
  }
  return grid;
}

std::string max_p_grid_csv(const MaxPGrid& grid) {
  std::ostringstream os;
  os.precision(10);
  os << "tau,p,feasible,mu_lo,mu_hi\n";
  for (const auto& c : grid.cells) {
    os << c.tau << ',' << c.p << ',' << (c.interval.feasible ? 1 : 0) << ',';
    if (c.interval.feasible) os << c.interval.lo << ',' << c.interval.hi;
    else os << ',';
    os << '\n';
  }
  return os.str();
}

std::vector<double> linspace_step(double lo, double step, double hi) {
  if (!(step > 0.0) || hi < lo) throw std::invalid_argument("linspace_step: bad range");
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo + static_cast<double>(i) * step;
  return out;
}

}  // namespace ladhtp
