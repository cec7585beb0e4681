#pragma once

#include <span>

#include "ladhtp/core.hpp"

namespace ladhtp {

/// The ceil(tau*m)-th smallest value of `values` (order statistic, no
/// interpolation). Requires a nonempty list and 0 < tau < 1.
double empirical_quantile(std::span<const double> values, double tau);

/// Rank used by empirical_quantile, 1-based: ceil(tau*m) clamped to [1, m].
std::size_t quantile_rank(std::size_t m, double tau);

struct TruncationResult {
  double value = 0.0;      ///< sum of |r_i| over mask
  double threshold = 0.0;  ///< tau-quantile of |r|
  SupportSet mask;         ///< indices with |r_i| <= threshold
};

/// Quantile-truncated l1 norm of a residual. Entries tied with the threshold
/// are kept, so the mask can exceed ceil(tau*m) entries.
TruncationResult truncated_l1(std::span<const double> r, double tau);

/// Same value as truncated_l1(r, tau).value without materialising the mask.
double truncated_l1_value(std::span<const double> r, double tau);

}  // namespace ladhtp
