#pragma once

#include <span>
#include <string>
#include <vector>

namespace ladhtp {

inline constexpr double kDefaultSuccessThreshold = 1e-4;
inline constexpr double kSnrCapDb = 300.0;

struct TrialOutcome {
  std::string solver_name;
  double rel_err = 0.0;
  bool success = false;
  double snr_db = 0.0;
  double wall_time_s = 0.0;
};

/// ||x_hat - x0||_2 / ||x0||_2. Throws on a zero ground truth.
double rel_err(std::span<const double> x_hat, std::span<const double> x0);

/// 20 log10(||x0|| / ||x_hat - x0||), capped at +300 dB.
double snr_db(std::span<const double> x_hat, std::span<const double> x0);

/// rel_err <= threshold counts as a success.
TrialOutcome make_outcome(std::string solver_name, std::span<const double> x_hat,
                          std::span<const double> x0, double wall_time_s,
                          double success_threshold = kDefaultSuccessThreshold);

double success_rate(std::span<const TrialOutcome> outcomes);

}  // namespace ladhtp
