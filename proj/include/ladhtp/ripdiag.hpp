#pragma once

#include <cstdint>

#include "ladhtp/core.hpp"

namespace ladhtp {

enum class RicSampling {
  Gaussian,  ///< Gaussian direction on a uniform support, normalised
  Vertex,    ///< +-1/sqrt(s) entries on a uniform support
};

/**
 * Monte-Carlo lower bound on the restricted 1-isometry constant delta_s, the
 * smallest delta with (1-delta)||x|| <= sqrt(pi/2)||Ax||_1 <= (1+delta)||x||
 * for all s-sparse x. Sampling can only witness violations, so delta_hat never
 * over-estimates; certifying an upper bound is NP-hard and not attempted.
 */
struct RicEstimate {
  std::size_t s = 0;
  double delta_hat = 0.0;
  std::size_t samples = 0;
  SupportSet worst_support;
  Vector worst_direction;  ///< length n, unit l2 norm
};

/// |sqrt(pi/2) ||Ax||_1 / ||x||_2 - 1|.
double ric_deviation(const DenseMatrix& A, std::span<const double> x);

/// Samples are drawn in fixed-size chunks seeded by trial_seed(seed, chunk),
/// so the first N samples are the same for any total >= N and any thread
/// count. `threads` = 0 picks the hardware concurrency.
RicEstimate estimate_ric1(const DenseMatrix& A, std::size_t s, std::size_t samples,
                          std::uint64_t seed, RicSampling mode = RicSampling::Gaussian,
                          unsigned threads = 1);

/// max_j |sqrt(pi/2) ||a_j||_1 - 1|: delta_1 exactly.
double ric1_order1_exact(const DenseMatrix& A);

}  // namespace ladhtp
