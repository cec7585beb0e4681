#include "ladhtp/quantile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace ladhtp {

namespace {

void validate(std::size_t m, double tau) {
  if (m == 0) throw std::invalid_argument("quantile: empty list");
  if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("quantile: tau must lie in (0,1)");
}

double threshold_of_abs(std::vector<double>& mags, double tau) {
  const std::size_t k = quantile_rank(mags.size(), tau);
  std::nth_element(mags.begin(), mags.begin() + static_cast<std::ptrdiff_t>(k - 1), mags.end());
  return mags[k - 1];
}

}  // namespace

std::size_t quantile_rank(std::size_t m, double tau) {
  validate(m, tau);
  const double target = tau * static_cast<double>(m);
  // tau*m is often an integer that rounding has nudged upward (0.3*10).
  const double nearest = std::round(target);
  const double rank = std::abs(target - nearest) <= 1e-9 * std::max(1.0, target)
                          ? nearest
                          : std::ceil(target);
  return std::clamp<std::size_t>(static_cast<std::size_t>(rank), 1, m);
}

double empirical_quantile(std::span<const double> values, double tau) {
  validate(values.size(), tau);
  std::vector<double> v(values.begin(), values.end());
  const std::size_t k = quantile_rank(v.size(), tau);
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k - 1), v.end());
  return v[k - 1];
}

TruncationResult truncated_l1(std::span<const double> r, double tau) {
  validate(r.size(), tau);
  std::vector<double> mags(r.size());
  std::transform(r.begin(), r.end(), mags.begin(), [](double a) { return std::abs(a); });

  TruncationResult out;
  out.threshold = threshold_of_abs(mags, tau);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double a = std::abs(r[i]);
    if (a <= out.threshold) {
      out.mask.push_back(i);
      out.value += a;
    }
  }
  return out;
}

double truncated_l1_value(std::span<const double> r, double tau) {
  validate(r.size(), tau);
  std::vector<double> mags(r.size());
  std::transform(r.begin(), r.end(), mags.begin(), [](double a) { return std::abs(a); });
  std::vector<double> scratch = mags;
  const double threshold = threshold_of_abs(scratch, tau);
  double value = 0.0;
  for (double a : mags)
    if (a <= threshold) value += a;
  return value;
}

}  // namespace ladhtp
