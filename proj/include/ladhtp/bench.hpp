#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ladhtp/metrics.hpp"
#include "ladhtp/mnistio.hpp"
#include "ladhtp/probgen.hpp"
#include "ladhtp/solvers.hpp"

namespace ladhtp {

enum class Preset { Desk, Paper };

Preset parse_preset(std::string_view name);

struct PresetValues {
  std::size_t m;
  std::size_t n;
  std::size_t trials;
};

/// Desk: m=500, n=2000, 20 trials. Paper: m=1000, n=5000, 100 trials.
PresetValues preset_values(Preset preset);

struct SweepCell {
  double p = 0.0;
  std::size_t s = 5;
  double mu = 6.0;
  std::size_t L = 10;
  double tau = 0.5;

  bool operator==(const SweepCell&) const = default;
};

struct SweepSpec {
  ProblemSpec problem;  ///< template; p, s and seed are set per cell and trial
  SolverConfig solver;  ///< template; mu, L and tau are set per cell
  std::vector<SolverKind> solvers{SolverKind::GFHTP1};
  std::vector<double> p_grid{0.1};
  std::vector<std::size_t> s_grid{5};
  std::vector<double> mu_grid{6.0};
  std::vector<std::size_t> L_grid{10};
  std::vector<double> tau_grid{0.5};
  std::size_t trials = 20;
  std::uint64_t base_seed = 0;
  double success_threshold = kDefaultSuccessThreshold;
  unsigned threads = 1;  ///< 0 = hardware concurrency
};

/// Cartesian product of the grids, p-major then s, mu, L, tau.
std::vector<SweepCell> sweep_cells(const SweepSpec& spec);

/// Problem seed for one (cell, trial); every solver of the pair sees it.
std::uint64_t sweep_problem_seed(std::uint64_t base_seed, std::size_t cell_index,
                                 std::size_t trial);

struct TrialRow {
  std::size_t cell_index = 0;
  SweepCell cell;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  SolverKind solver = SolverKind::GFHTP1;
  TrialOutcome outcome;
  std::size_t recovered_sparsity = 0;
  std::size_t outer_iters = 0;
  std::string error;  ///< nonempty when generation or the solve threw
};

struct SweepRow {
  SweepCell cell;
  SolverKind solver = SolverKind::GFHTP1;
  double success_rate = 0.0;
  double mean_rel_err = 0.0;
  double mean_recovered_sparsity = 0.0;
  double mean_wall_time_s = 0.0;
  std::size_t trials = 0;  ///< trials that completed
  std::size_t errors = 0;
  std::string first_error;
};

struct SweepReport {
  std::vector<SweepRow> rows;     ///< one per (cell, solver), cell-major
  std::vector<TrialRow> trials;   ///< one per (cell, trial, solver)
};

/// Runs every (cell, trial) task, in parallel when spec.threads != 1. The
/// report does not depend on the execution order. Per-trial failures are
/// recorded in the report instead of aborting.
SweepReport run_sweep(const SweepSpec& spec);

/// Recomputes the aggregate rows from per-trial rows.
std::vector<SweepRow> aggregate_trials(const std::vector<TrialRow>& trials,
                                       std::size_t solver_count);

/// Equality of everything except wall-clock timings.
bool same_results(const SweepReport& a, const SweepReport& b);

std::string sweep_csv(const SweepReport& report);
std::string trials_csv(const SweepReport& report);

struct SingleRun {
  SolverResult result;
  TrialOutcome outcome;
  std::string trace_jsonl;
};

/// Solves one instance. When `trace_path` is set the JSON-lines trace is
/// also written there. FHTP1/AIHT/PSGD default to the true sparsity.
SingleRun run_single(const RecoveryProblem& problem, SolverKind solver, SolverConfig cfg,
                     const std::optional<std::string>& trace_path = std::nullopt,
                     double success_threshold = kDefaultSuccessThreshold);

/// Default step coefficient for image recovery. Digit images are far denser
/// (s around 100 to 150 with n = 784) than the synthetic benchmarks, and the
/// default mu = 6 makes both HTP solvers diverge there.
inline constexpr double kImageMu = 5.0;

struct MnistSpec {
  std::vector<std::size_t> image_indices;
  std::size_t m = 700;
  double p = 0.1;
  double sigma = 10.0;
  std::vector<SolverKind> solvers{SolverKind::PSGD, SolverKind::FHTP1, SolverKind::GFHTP1};
  SolverConfig solver = [] {
    SolverConfig cfg;
    cfg.mu = kImageMu;
    return cfg;
  }();
  std::uint64_t seed = 0;
};

struct MnistRow {
  std::size_t image = 0;
  std::size_t s = 0;
  std::uint64_t seed = 0;
  SolverKind solver = SolverKind::GFHTP1;
  double snr_db = 0.0;
  double rel_err = 0.0;
  double wall_time_s = 0.0;
};

struct MnistReport {
  std::vector<MnistRow> rows;  ///< image-major, solvers in spec order
};

/// A fresh Gaussian A (m x rows*cols) is drawn per image with seed
/// trial_seed(spec.seed, image index). Throws on an all-zero image.
MnistReport run_mnist(const IdxImages& images, const MnistSpec& spec);

/// Same comparison rule as same_results().
bool same_results(const MnistReport& a, const MnistReport& b);

std::string mnist_csv(const MnistReport& report);

}  // namespace ladhtp
