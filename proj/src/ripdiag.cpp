#include "ladhtp/ripdiag.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "ladhtp/probgen.hpp"
#include "ladhtp/stepsize.hpp"

namespace ladhtp {

namespace {

constexpr std::size_t kChunk = 1024;

struct Witness {
  double deviation = -1.0;
  SupportSet support;
  Vector values;  // packed, aligned with support
};

double sparse_deviation(const DenseMatrix& A, const SupportSet& S, const Vector& values) {
  double l1 = 0.0;
  for (std::size_t i = 0; i < A.rows(); ++i) {
    auto r = A.row(i);
    double acc = 0.0;
    for (std::size_t q = 0; q < S.size(); ++q) acc += r[S[q]] * values[q];
    l1 += std::abs(acc);
  }
  return std::abs(kSqrtHalfPi * l1 / norm2(values) - 1.0);
}

Witness run_chunk(const DenseMatrix& A, std::size_t s, std::size_t count, std::uint64_t seed,
                  RicSampling mode) {
  Rng rng(seed);
  Witness best;
  Vector values(s);
  for (std::size_t t = 0; t < count; ++t) {
    SupportSet S = rng.sample_without_replacement(A.cols(), s);
    if (mode == RicSampling::Gaussian) {
      double nrm;
      do {
        for (double& v : values) v = rng.normal();
        nrm = norm2(values);
      } while (nrm == 0.0);
      for (double& v : values) v /= nrm;
    } else {
      const double mag = 1.0 / std::sqrt(static_cast<double>(s));
      for (double& v : values) v = (rng.below(2) == 0 ? mag : -mag);
    }
    const double dev = sparse_deviation(A, S, values);
    if (dev > best.deviation) {
      best.deviation = dev;
      best.support = std::move(S);
      best.values = values;
    }
  }
  return best;
}

}  // namespace

double ric_deviation(const DenseMatrix& A, std::span<const double> x) {
  const double nx = norm2(x);
  if (!(nx > 0.0)) throw std::invalid_argument("ric_deviation: zero vector");
  return std::abs(kSqrtHalfPi * norm1(matvec(A, x)) / nx - 1.0);
}

RicEstimate estimate_ric1(const DenseMatrix& A, std::size_t s, std::size_t samples,
                          std::uint64_t seed, RicSampling mode, unsigned threads) {
  if (s < 1 || s > A.cols()) throw std::invalid_argument("estimate_ric1: s must lie in [1, n]");
  if (samples < 1) throw std::invalid_argument("estimate_ric1: samples must be >= 1");

  const std::size_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<Witness> results(chunks);
  auto work = [&](std::size_t c) {
    const std::size_t count = std::min(kChunk, samples - c * kChunk);
    results[c] = run_chunk(A, s, count, trial_seed(seed, c), mode);
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, chunks));
  if (threads <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) work(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t c; (c = next.fetch_add(1)) < chunks;) work(c);
      });
  }

  // Reduce in chunk order; earlier chunks win ties.
  std::size_t best = 0;
  for (std::size_t c = 1; c < chunks; ++c)
    if (results[c].deviation > results[best].deviation) best = c;

  RicEstimate est;
  est.s = s;
  est.samples = samples;
  est.delta_hat = results[best].deviation;
  est.worst_support = results[best].support;
  est.worst_direction.assign(A.cols(), 0.0);
  for (std::size_t q = 0; q < est.worst_support.size(); ++q)
    est.worst_direction[est.worst_support[q]] = results[best].values[q];
  return est;
}

double ric1_order1_exact(const DenseMatrix& A) {
  Vector col_l1(A.cols(), 0.0);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    auto r = A.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) col_l1[j] += std::abs(r[j]);
  }
  double worst = 0.0;
  for (double c : col_l1) worst = std::max(worst, std::abs(kSqrtHalfPi * c - 1.0));
  return worst;
}

}  // namespace ladhtp
