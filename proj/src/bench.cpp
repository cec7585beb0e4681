#include "ladhtp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ladhtp {

Preset parse_preset(std::string_view name) {
  if (name == "desk") return Preset::Desk;
  if (name == "paper") return Preset::Paper;
  throw std::invalid_argument("unknown preset '" + std::string(name) + "' (desk|paper)");
}

PresetValues preset_values(Preset preset) {
  return preset == Preset::Paper ? PresetValues{1000, 5000, 100} : PresetValues{500, 2000, 20};
}

std::vector<SweepCell> sweep_cells(const SweepSpec& spec) {
  std::vector<SweepCell> cells;
  for (double p : spec.p_grid)
    for (std::size_t s : spec.s_grid)
      for (double mu : spec.mu_grid)
        for (std::size_t L : spec.L_grid)
          for (double tau : spec.tau_grid) cells.push_back({p, s, mu, L, tau});
  return cells;
}

std::uint64_t sweep_problem_seed(std::uint64_t base_seed, std::size_t cell_index,
                                 std::size_t trial) {
  return trial_seed(trial_seed(base_seed, cell_index), trial);
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

SolverConfig config_for(SolverConfig cfg, SolverKind kind, std::size_t true_s) {
  if (kind != SolverKind::GFHTP1 && !cfg.sparsity) cfg.sparsity = true_s;
  return cfg;
}

struct TimedSolve {
  SolverResult result;
  double seconds;
};

TimedSolve timed_solve(SolverKind kind, const RecoveryProblem& pb, const SolverConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  SolverResult r = solve(kind, pb.A, pb.b, cfg);
  return {std::move(r), seconds_since(start)};
}

void validate(const SweepSpec& spec) {
  if (spec.trials < 1) throw std::invalid_argument("sweep: trials must be >= 1");
  if (spec.solvers.empty() || spec.p_grid.empty() || spec.s_grid.empty() || spec.mu_grid.empty() ||
      spec.L_grid.empty() || spec.tau_grid.empty())
    throw std::invalid_argument("sweep: every grid must be nonempty");
}

template <class Task>
void run_tasks(std::size_t count, unsigned threads, Task&& task) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) task(i);
    });
}

}  // namespace

SweepReport run_sweep(const SweepSpec& spec) {
  validate(spec);
  const auto cells = sweep_cells(spec);
  const std::size_t n_solvers = spec.solvers.size();
  const std::size_t n_tasks = cells.size() * spec.trials;

  SweepReport report;
  report.trials.resize(n_tasks * n_solvers);

  run_tasks(n_tasks, spec.threads, [&](std::size_t task) {
    const std::size_t ci = task / spec.trials;
    const std::size_t trial = task % spec.trials;
    const SweepCell& cell = cells[ci];
    const std::uint64_t seed = sweep_problem_seed(spec.base_seed, ci, trial);

    auto* rows = &report.trials[task * n_solvers];
    for (std::size_t q = 0; q < n_solvers; ++q) {
      rows[q].cell_index = ci;
      rows[q].cell = cell;
      rows[q].trial = trial;
      rows[q].seed = seed;
      rows[q].solver = spec.solvers[q];
      rows[q].outcome.solver_name = std::string(to_string(spec.solvers[q]));
    }

    RecoveryProblem pb;
    try {
      ProblemSpec ps = spec.problem;
      ps.p = cell.p;
      ps.s = cell.s;
      ps.seed = seed;
      pb = generate(ps);
    } catch (const std::exception& e) {
      for (std::size_t q = 0; q < n_solvers; ++q) rows[q].error = e.what();
      return;
    }

    SolverConfig base = spec.solver;
    base.mu = cell.mu;
    base.inner_budget = cell.L;
    base.tau = cell.tau;
    for (std::size_t q = 0; q < n_solvers; ++q) {
      try {
        const auto run = timed_solve(spec.solvers[q], pb, config_for(base, spec.solvers[q], cell.s));
        rows[q].outcome = make_outcome(rows[q].outcome.solver_name, run.result.x_hat, pb.x0,
                                       run.seconds, spec.success_threshold);
        rows[q].recovered_sparsity = support_of(run.result.x_hat).size();
        rows[q].outer_iters = run.result.outer_iters;
      } catch (const std::exception& e) {
        rows[q].error = e.what();
      }
    }
  });

  report.rows = aggregate_trials(report.trials, n_solvers);
  return report;
}

std::vector<SweepRow> aggregate_trials(const std::vector<TrialRow>& trials,
                                       std::size_t solver_count) {
  std::vector<SweepRow> rows;
  // Trial rows are grouped by cell; within a cell, by trial then solver.
  for (std::size_t start = 0; start < trials.size();) {
    std::size_t end = start;
    while (end < trials.size() && trials[end].cell_index == trials[start].cell_index) ++end;
    for (std::size_t q = 0; q < solver_count; ++q) {
      SweepRow row;
      row.cell = trials[start].cell;
      row.solver = trials[start + q].solver;
      std::size_t hits = 0;
      for (std::size_t i = start + q; i < end; i += solver_count) {
        const TrialRow& t = trials[i];
        if (!t.error.empty()) {
          if (row.errors++ == 0) row.first_error = t.error;
          continue;
        }
        ++row.trials;
        hits += t.outcome.success ? 1 : 0;
        row.mean_rel_err += t.outcome.rel_err;
        row.mean_recovered_sparsity += static_cast<double>(t.recovered_sparsity);
        row.mean_wall_time_s += t.outcome.wall_time_s;
      }
      if (row.trials > 0) {
        const double count = static_cast<double>(row.trials);
        row.success_rate = static_cast<double>(hits) / count;
        row.mean_rel_err /= count;
        row.mean_recovered_sparsity /= count;
        row.mean_wall_time_s /= count;
      }
      rows.push_back(std::move(row));
    }
    start = end;
  }
  return rows;
}

namespace {

bool same_value(double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); }

bool same_outcome(const TrialOutcome& a, const TrialOutcome& b) {
  return a.solver_name == b.solver_name && same_value(a.rel_err, b.rel_err) &&
         a.success == b.success && same_value(a.snr_db, b.snr_db);
}

}  // namespace

bool same_results(const SweepReport& a, const SweepReport& b) {
  if (a.rows.size() != b.rows.size() || a.trials.size() != b.trials.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const auto& x = a.rows[i];
    const auto& y = b.rows[i];
    if (!(x.cell == y.cell) || x.solver != y.solver || !same_value(x.success_rate, y.success_rate) ||
        !same_value(x.mean_rel_err, y.mean_rel_err) ||
        !same_value(x.mean_recovered_sparsity, y.mean_recovered_sparsity) ||
        x.trials != y.trials || x.errors != y.errors || x.first_error != y.first_error)
      return false;
  }
  for (std::size_t i = 0; i < a.trials.size(); ++i) {
    const auto& x = a.trials[i];
    const auto& y = b.trials[i];
    if (x.cell_index != y.cell_index || !(x.cell == y.cell) || x.trial != y.trial ||
        x.seed != y.seed || x.solver != y.solver || !same_outcome(x.outcome, y.outcome) ||
        x.recovered_sparsity != y.recovered_sparsity || x.outer_iters != y.outer_iters ||
        x.error != y.error)
      return false;
  }
  return true;
}

namespace {

void write_cell(std::ostream& os, const SweepCell& c) {
  os << c.p << ',' << c.s << ',' << c.mu << ',' << c.L << ',' << c.tau;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

}  // namespace

std::string sweep_csv(const SweepReport& report) {
  std::ostringstream os;
  os.precision(10);
  os << "p,s,mu,L,tau,solver,success_rate,mean_rel_err,mean_recovered_sparsity,"
        "mean_wall_time_s,trials,errors\n";
  for (const auto& r : report.rows) {
    write_cell(os, r.cell);
    os << ',' << to_string(r.solver) << ',' << r.success_rate << ',' << r.mean_rel_err << ','
       << r.mean_recovered_sparsity << ',' << r.mean_wall_time_s << ',' << r.trials << ','
       << r.errors << '\n';
  }
  return os.str();
}

std::string trials_csv(const SweepReport& report) {
  std::ostringstream os;
  os.precision(17);
  os << "cell,p,s,mu,L,tau,trial,seed,solver,rel_err,success,snr_db,recovered_sparsity,"
        "outer_iters,wall_time_s,error\n";
  for (const auto& t : report.trials) {
    os << t.cell_index << ',';
    write_cell(os, t.cell);
    os << ',' << t.trial << ',' << t.seed << ',' << to_string(t.solver) << ','
       << t.outcome.rel_err << ',' << (t.outcome.success ? 1 : 0) << ',' << t.outcome.snr_db
       << ',' << t.recovered_sparsity << ',' << t.outer_iters << ',' << t.outcome.wall_time_s
       << ',' << (t.error.empty() ? "" : csv_quote(t.error)) << '\n';
  }
  return os.str();
}

SingleRun run_single(const RecoveryProblem& problem, SolverKind solver, SolverConfig cfg,
                     const std::optional<std::string>& trace_path, double success_threshold) {
  cfg = config_for(std::move(cfg), solver, problem.spec.s);
  const auto run = timed_solve(solver, problem, cfg);
  SingleRun out;
  out.outcome = make_outcome(std::string(to_string(solver)), run.result.x_hat, problem.x0,
                             run.seconds, success_threshold);
  out.trace_jsonl = trace_to_jsonl(run.result);
  out.result = std::move(run.result);
  if (trace_path) {
    std::ofstream os(*trace_path);
    if (!os) throw std::runtime_error("cannot open '" + *trace_path + "' for writing");
    os << out.trace_jsonl;
  }
  return out;
}

MnistReport run_mnist(const IdxImages& images, const MnistSpec& spec) {
  if (spec.m < 1) throw std::invalid_argument("mnist: m must be >= 1");
  MnistReport report;
  for (std::size_t index : spec.image_indices) {
    const ImageSignal sig = image_to_signal(images.image(index));
    if (sig.s == 0)
      throw std::invalid_argument("mnist: image " + std::to_string(index) +
                                  " is all zero (zero ground truth)");
    ProblemSpec ps;
    ps.m = spec.m;
    ps.outliers = OutlierKind::Gaussian;
    ps.outlier_scale = spec.sigma;
    ps.p = spec.p;
    ps.seed = trial_seed(spec.seed, index);
    const RecoveryProblem pb = generate_for_signal(sig.signal, ps);

    for (SolverKind kind : spec.solvers) {
      const auto run = timed_solve(kind, pb, config_for(spec.solver, kind, sig.s));
      report.rows.push_back({index, sig.s, ps.seed, kind, snr_db(run.result.x_hat, pb.x0),
                             rel_err(run.result.x_hat, pb.x0), run.seconds});
    }
  }
  return report;
}

bool same_results(const MnistReport& a, const MnistReport& b) {
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const auto& x = a.rows[i];
    const auto& y = b.rows[i];
    if (x.image != y.image || x.s != y.s || x.seed != y.seed || x.solver != y.solver ||
        !same_value(x.snr_db, y.snr_db) || !same_value(x.rel_err, y.rel_err))
      return false;
  }
  return true;
}

std::string mnist_csv(const MnistReport& report) {
  std::ostringstream os;
  os.precision(10);
  os << "image,s,seed,solver,snr_db,rel_err,wall_time_s\n";
  for (const auto& r : report.rows)
    os << r.image << ',' << r.s << ',' << r.seed << ',' << to_string(r.solver) << ',' << r.snr_db
       << ',' << r.rel_err << ',' << r.wall_time_s << '\n';
  return os.str();
}

}  // namespace ladhtp
