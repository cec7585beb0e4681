#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ladhtp/core.hpp"

namespace ladhtp {

enum class SolverKind { FHTP1, GFHTP1, AIHT, PSGD };

std::string_view to_string(SolverKind kind);
/// Accepts fhtp1, gfhtp1, aiht, psgd (case-insensitive).
SolverKind parse_solver_kind(std::string_view name);

/// Diverged: the residual stopped being finite; x_hat holds the offending iterate.
enum class Termination { OuterTolerance, SupportRepeat, MaxIterations, Diverged };

std::string_view to_string(Termination t);

/// Inner iterate u^{k+1,l+1} handed to SolverConfig::inner_observer.
struct InnerStep {
  std::size_t k;
  std::size_t l;
  std::span<const double> u;
  const SupportSet& support;
};

struct SolverConfig {
  double mu = 6.0;
  double tau = 0.5;
  std::size_t inner_budget = 10;          ///< L
  std::optional<std::size_t> max_outer;   ///< defaults to ceil(m/2)
  double eps_inner = 1e-8;
  double eps_outer = 1e-4;
  std::optional<std::size_t> sparsity;    ///< required by FHTP1, AIHT, PSGD
  std::optional<Vector> x0;               ///< defaults to zero

  /// Optional mu_{k,l}; overrides `mu` when set. Called with the 1-based
  /// outer index k+1 and the inner index l.
  std::function<double(std::size_t k, std::size_t l)> mu_schedule;
  std::function<void(const InnerStep&)> inner_observer;

  // Baselines.
  double aiht_mu = 1.0;
  double psgd_mu0 = 0.8;
  double psgd_decay = 0.95;
  std::size_t baseline_max_iter = 1000;
  double baseline_tol = 1e-8;
};

/// Throws std::invalid_argument on non-positive tolerances, L == 0, etc.
void validate(const SolverConfig& cfg);

struct OuterTraceEntry {
  std::size_t k = 0;
  SupportSet support;                 ///< S^{k+1}
  double truncated_residual_l1 = 0.0; ///< residual measure at x^k driving the step
  double step_t0 = 0.0;
  std::size_t inner_iters_used = 0;

  bool operator==(const OuterTraceEntry&) const = default;
};

struct SolverResult {
  Vector x_hat;
  Termination terminated_by = Termination::MaxIterations;
  std::size_t outer_iters = 0;
  std::vector<OuterTraceEntry> trace;

  bool operator==(const SolverResult&) const = default;
};

/**
 * Fast hard thresholding pursuit for the l1 loss.
 *
 * Each outer step takes a truncated-adaptive subgradient step followed by
 * H_s to pick the support S^{k+1}, then runs up to L restricted subgradient
 * steps on S^{k+1}. Stops when the truncated residual drops to eps_outer,
 * the support repeats, or max_outer outer steps have run.
 */
SolverResult solve_fhtp1(const DenseMatrix& A, std::span<const double> b, const SolverConfig& cfg);

/// Graded variant: outer step k keeps k+1 entries, so the sparsity is not
/// needed. There is no support-repeat stop.
SolverResult solve_gfhtp1(const DenseMatrix& A, std::span<const double> b, const SolverConfig& cfg);

/// Adaptive IHT baseline with untruncated step aiht_mu * sqrt(pi/2) * ||b - Ax||_1.
SolverResult solve_aiht(const DenseMatrix& A, std::span<const double> b, const SolverConfig& cfg);

/// Projected subgradient baseline with step psgd_mu0 * psgd_decay^k, projecting
/// onto s-sparse vectors every iteration.
SolverResult solve_psgd(const DenseMatrix& A, std::span<const double> b, const SolverConfig& cfg);

SolverResult solve(SolverKind kind, const DenseMatrix& A, std::span<const double> b,
                   const SolverConfig& cfg);

/// One JSON object per outer iteration: k, support, trunc_res_l1, step_t0, inner_iters.
std::string trace_to_jsonl(const SolverResult& result);

}  // namespace ladhtp
