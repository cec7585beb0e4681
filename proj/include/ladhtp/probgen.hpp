#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <string_view>

#include "ladhtp/core.hpp"

namespace ladhtp {

enum class SignalKind { Gaussian, Flat, External };
enum class OutlierKind { None, Gaussian, Uniform };

std::string_view to_string(SignalKind k);
std::string_view to_string(OutlierKind k);
SignalKind parse_signal_kind(std::string_view s);
OutlierKind parse_outlier_kind(std::string_view s);

/// Name of the pseudo-random pipeline used by generate(); printed in reports.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64/uniform53/inverse-cdf-normal";

struct ProblemSpec {
  std::size_t m = 1000;
  std::size_t n = 5000;
  std::size_t s = 5;
  SignalKind signal = SignalKind::Gaussian;
  OutlierKind outliers = OutlierKind::Gaussian;
  double outlier_scale = 10.0;  ///< sigma for Gaussian outliers, u for Uniform(-u, u)
  double p = 0.0;               ///< outlier fraction in [0, 1)
  std::uint64_t seed = 0;

  bool operator==(const ProblemSpec&) const = default;
};

/// round(p * m).
std::size_t outlier_count(const ProblemSpec& spec);

void validate(const ProblemSpec& spec);

struct RecoveryProblem {
  DenseMatrix A;
  Vector b;
  Vector x0;
  Vector eta;
  SupportSet T;  ///< outlier rows
  ProblemSpec spec;

  bool operator==(const RecoveryProblem&) const = default;
};

/// Seeded stream: 64-bit Mersenne Twister, 53-bit uniforms on the open
/// interval (0,1), and normals by inverse-CDF transform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();             ///< in (0, 1)
  double normal();              ///< N(0, 1)
  std::uint64_t below(std::uint64_t bound);  ///< uniform in [0, bound)

  /// k distinct indices from [0, n), uniformly, returned sorted.
  SupportSet sample_without_replacement(std::size_t n, std::size_t k);

 private:
  std::mt19937_64 engine_;
};

/**
 * Draws A with i.i.d. N(0, 1/m^2) entries, an s-sparse x0 (Gaussian or flat
 * nonzeros on a uniform support), round(p*m) outliers on uniform rows and
 * b = A x0 + eta. Fully determined by spec.seed.
 */
RecoveryProblem generate(const ProblemSpec& spec);

/// Same pipeline with a caller-supplied ground truth; spec.n and spec.s are
/// overwritten from x0 and spec.signal becomes External.
RecoveryProblem generate_for_signal(const Vector& x0, ProblemSpec spec);

/// SplitMix64-style avalanche of (base_seed, trial_index).
std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial_index);

// Binary container, all integers u64 and reals IEEE-754 binary64, little endian:
//   "LADPROB1" | m n s signal_kind outlier_kind | outlier_scale p | seed |T|
//   | A (m*n, row-major) | b (m) | x0 (n) | eta (m) | T (|T| u64)
void write_problem(std::ostream& os, const RecoveryProblem& problem);
RecoveryProblem read_problem(std::istream& is);
void save_problem(const std::string& path, const RecoveryProblem& problem);
RecoveryProblem load_problem(const std::string& path);

}  // namespace ladhtp
