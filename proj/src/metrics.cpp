#include "ladhtp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ladhtp/core.hpp"

namespace ladhtp {

namespace {

double truth_norm(std::span<const double> x_hat, std::span<const double> x0) {
  if (x_hat.size() != x0.size()) throw std::invalid_argument("metrics: length mismatch");
  const double n = norm2(x0);
  if (!(n > 0.0)) throw std::invalid_argument("metrics: zero ground truth");
  return n;
}

}  // namespace

double rel_err(std::span<const double> x_hat, std::span<const double> x0) {
  const double n = truth_norm(x_hat, x0);
  return distance2(x_hat, x0) / n;
}

double snr_db(std::span<const double> x_hat, std::span<const double> x0) {
  const double n = truth_norm(x_hat, x0);
  const double err = distance2(x_hat, x0);
  if (err == 0.0) return kSnrCapDb;
  return std::min(kSnrCapDb, 20.0 * std::log10(n / err));
}

TrialOutcome make_outcome(std::string solver_name, std::span<const double> x_hat,
                          std::span<const double> x0, double wall_time_s,
                          double success_threshold) {
  TrialOutcome o;
  o.solver_name = std::move(solver_name);
  o.rel_err = rel_err(x_hat, x0);
  // A diverged solve yields NaN, which never counts as a success.
  o.success = o.rel_err <= success_threshold;
  o.snr_db = snr_db(x_hat, x0);
  o.wall_time_s = wall_time_s;
  return o;
}

double success_rate(std::span<const TrialOutcome> outcomes) {
  if (outcomes.empty()) throw std::invalid_argument("success_rate: no outcomes");
  const auto hits = std::count_if(outcomes.begin(), outcomes.end(),
                                  [](const TrialOutcome& o) { return o.success; });
  return static_cast<double>(hits) / static_cast<double>(outcomes.size());
}

}  // namespace ladhtp
