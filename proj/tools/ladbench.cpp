// ladbench: command-line front end for the sparse LAD recovery library.
//
// Exit codes: 0 success, 1 input error, 2 internal error.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "ladhtp/bench.hpp"
#include "ladhtp/config.hpp"
#include "ladhtp/ripdiag.hpp"
#include "ladhtp/stepsize.hpp"

namespace fs = std::filesystem;
using namespace ladhtp;

namespace {

struct Globals {
  std::optional<std::uint64_t> seed;
  std::string out = ".";
  std::string preset = "desk";
  std::string config;
};

struct ProblemFlags {
  std::optional<std::size_t> m, n, s;
  std::optional<std::string> signal, outliers;
  std::optional<double> sigma, p;
};

struct SolverFlags {
  std::optional<double> mu, tau;
  std::optional<std::size_t> L, max_outer, sparsity;
};

void add_problem_flags(CLI::App* app, ProblemFlags& f) {
  app->add_option("--m", f.m, "measurements");
  app->add_option("--n", f.n, "signal length");
  app->add_option("--s", f.s, "sparsity of the generated signal");
  app->add_option("--signal", f.signal, "gaussian|flat");
  app->add_option("--outliers", f.outliers, "gaussian|uniform|none");
  app->add_option("--sigma", f.sigma, "outlier scale (sigma, or u for uniform)");
  app->add_option("--p", f.p, "outlier fraction");
}

void add_solver_flags(CLI::App* app, SolverFlags& f) {
  app->add_option("--mu", f.mu, "step coefficient");
  app->add_option("--tau", f.tau, "residual quantile");
  app->add_option("--L", f.L, "inner iteration budget");
  app->add_option("--max-outer", f.max_outer, "outer iteration cap (default ceil(m/2))");
  app->add_option("--sparsity", f.sparsity, "sparsity given to FHTP1/AIHT/PSGD (default: true s)");
}

void apply(const ProblemFlags& f, ProblemSpec& spec) {
  if (f.m) spec.m = *f.m;
  if (f.n) spec.n = *f.n;
  if (f.s) spec.s = *f.s;
  if (f.signal) spec.signal = parse_signal_kind(*f.signal);
  if (f.outliers) spec.outliers = parse_outlier_kind(*f.outliers);
  if (f.sigma) spec.outlier_scale = *f.sigma;
  if (f.p) spec.p = *f.p;
}

void apply(const SolverFlags& f, SolverConfig& cfg) {
  if (f.mu) cfg.mu = *f.mu;
  if (f.tau) cfg.tau = *f.tau;
  if (f.L) cfg.inner_budget = *f.L;
  if (f.max_outer) cfg.max_outer = *f.max_outer;
  if (f.sparsity) cfg.sparsity = *f.sparsity;
}

/// Preset, then config file, then command-line flags.
struct Settings {
  ProblemSpec problem;
  SolverConfig solver;
  SweepSpec sweep;
};

Settings base_settings(const Globals& g, const SolverConfig& solver_defaults = {}) {
  Settings st;
  st.solver = solver_defaults;
  const auto pv = preset_values(parse_preset(g.preset));
  st.problem.m = pv.m;
  st.problem.n = pv.n;
  st.sweep.trials = pv.trials;
  if (!g.config.empty()) {
    ConfigMap cfg = read_config_file(g.config);
    apply_problem_spec(cfg, st.problem);
    apply_solver_config(cfg, st.solver);
    apply_sweep_spec(cfg, st.sweep);
    reject_unknown_keys(cfg);
  }
  if (g.seed) {
    st.problem.seed = *g.seed;
    st.sweep.base_seed = *g.seed;
  }
  return st;
}

fs::path out_file(const Globals& g, const std::string& name) {
  fs::create_directories(g.out);
  return fs::path(g.out) / name;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw std::invalid_argument("cannot open '" + path.string() + "' for writing");
  os << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse recovery under gross outliers: FHTP1/GFHTP1 solvers and benchmarks"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "base random seed");
  app.add_option("--out", g.out, "output directory")->capture_default_str();
  app.add_option("--preset", g.preset, "desk|paper")->capture_default_str();
  app.add_option("--config", g.config, "key = value config file");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "run one solver on one instance");
  ProblemFlags solve_pf;
  SolverFlags solve_sf;
  std::string solve_solver = "gfhtp1";
  std::string problem_in, problem_out;
  add_problem_flags(solve_cmd, solve_pf);
  add_solver_flags(solve_cmd, solve_sf);
  solve_cmd->add_option("--solver", solve_solver, "fhtp1|gfhtp1|aiht|psgd")->capture_default_str();
  solve_cmd->add_option("--problem", problem_in, "load the instance from a binary problem file");
  solve_cmd->add_option("--save-problem", problem_out, "write the instance to a binary problem file");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep with paired trials");
  ProblemFlags sweep_pf;
  SolverFlags sweep_sf;
  std::optional<std::string> solvers, p_grid, s_grid, mu_grid, L_grid, tau_grid;
  std::optional<std::size_t> trials;
  std::optional<unsigned> threads;
  add_problem_flags(sweep_cmd, sweep_pf);
  sweep_cmd->add_option("--max-outer", sweep_sf.max_outer, "outer iteration cap");
  sweep_cmd->add_option("--solvers", solvers, "comma list, e.g. gfhtp1,fhtp1,psgd");
  sweep_cmd->add_option("--p-grid", p_grid, "comma list or lo:step:hi");
  sweep_cmd->add_option("--s-grid", s_grid, "comma list");
  sweep_cmd->add_option("--mu-grid", mu_grid, "comma list or lo:step:hi");
  sweep_cmd->add_option("--L-grid", L_grid, "comma list");
  sweep_cmd->add_option("--tau-grid", tau_grid, "comma list or lo:step:hi");
  sweep_cmd->add_option("--trials", trials, "trials per cell (default from preset)");
  sweep_cmd->add_option("--threads", threads, "worker threads, 0 = all cores");

  // murange
  auto* mu_cmd = app.add_subcommand("murange", "feasible step-coefficient interval");
  FeasibilityParams fp;
  std::string variant = "general";
  mu_cmd->add_option("--tau", fp.tau)->capture_default_str();
  mu_cmd->add_option("--p", fp.p)->capture_default_str();
  mu_cmd->add_option("--epsilon", fp.epsilon)->capture_default_str();
  mu_cmd->add_option("--delta", fp.delta)->capture_default_str();
  mu_cmd->add_option("--t1", fp.t1_ratio, "|T1|/m")->capture_default_str();
  mu_cmd->add_option("--lambda", fp.lambda)->capture_default_str();
  mu_cmd->add_option("--variant", variant, "general|flat")->capture_default_str();

  // maxp
  auto* maxp_cmd = app.add_subcommand("maxp", "max feasible outlier fraction per tau");
  FeasibilityParams gp;
  std::string grid_variant = "general";
  std::optional<std::string> maxp_tau, maxp_p;
  maxp_cmd->add_option("--variant", grid_variant, "general|flat")->capture_default_str();
  maxp_cmd->add_option("--tau-grid", maxp_tau, "default 0.1:0.001:0.7 (general), 0.1:0.001:0.5 (flat)");
  maxp_cmd->add_option("--p-grid", maxp_p, "default 0.001:0.0001:0.5");
  maxp_cmd->add_option("--epsilon", gp.epsilon)->capture_default_str();
  maxp_cmd->add_option("--delta", gp.delta)->capture_default_str();
  maxp_cmd->add_option("--t1", gp.t1_ratio)->capture_default_str();
  maxp_cmd->add_option("--lambda", gp.lambda)->capture_default_str();

  // ric
  auto* ric_cmd = app.add_subcommand("ric", "Monte-Carlo lower bound on the RIC_1");
  std::optional<std::size_t> ric_m, ric_n;
  std::size_t ric_s = 5, ric_samples = 10000;
  std::string ric_mode = "gaussian";
  unsigned ric_threads = 1;
  ric_cmd->add_option("--m", ric_m);
  ric_cmd->add_option("--n", ric_n);
  ric_cmd->add_option("--s", ric_s)->capture_default_str();
  ric_cmd->add_option("--samples", ric_samples)->capture_default_str();
  ric_cmd->add_option("--mode", ric_mode, "gaussian|vertex")->capture_default_str();
  ric_cmd->add_option("--threads", ric_threads)->capture_default_str();

  // mnist
  auto* mnist_cmd = app.add_subcommand("mnist", "image recovery on IDX images");
  MnistSpec ms;
  std::string idx_path;
  std::string images = "0,1,2,3,4,5,6,7,8,9";
  std::string mnist_solvers = "psgd,fhtp1,gfhtp1";
  SolverFlags mnist_sf;
  mnist_cmd->add_option("--idx", idx_path, "IDX u8 image file (e.g. t10k-images-idx3-ubyte)")->required();
  mnist_cmd->add_option("--images", images, "comma list of image indices")->capture_default_str();
  mnist_cmd->add_option("--m", ms.m)->capture_default_str();
  mnist_cmd->add_option("--p", ms.p)->capture_default_str();
  mnist_cmd->add_option("--sigma", ms.sigma)->capture_default_str();
  mnist_cmd->add_option("--solvers", mnist_solvers)->capture_default_str();
  add_solver_flags(mnist_cmd, mnist_sf);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*solve_cmd) {
      Settings st = base_settings(g);
      apply(solve_pf, st.problem);
      apply(solve_sf, st.solver);
      const RecoveryProblem pb = problem_in.empty() ? generate(st.problem) : load_problem(problem_in);
      if (!problem_out.empty()) save_problem(problem_out, pb);
      const SolverKind kind = parse_solver_kind(solve_solver);
      const auto trace = out_file(g, "trace.jsonl").string();
      const SingleRun run = run_single(pb, kind, st.solver, trace);
      nlohmann::json j;
      j["solver"] = to_string(kind);
      j["m"] = pb.spec.m;
      j["n"] = pb.spec.n;
      j["s"] = pb.spec.s;
      j["p"] = pb.spec.p;
      j["seed"] = pb.spec.seed;
      j["rng"] = kRngAlgorithm;
      j["rel_err"] = run.outcome.rel_err;
      j["success"] = run.outcome.success;
      j["snr_db"] = run.outcome.snr_db;
      j["wall_time_s"] = run.outcome.wall_time_s;
      j["outer_iters"] = run.result.outer_iters;
      j["terminated_by"] = to_string(run.result.terminated_by);
      j["recovered_sparsity"] = support_of(run.result.x_hat).size();
      j["trace"] = trace;
      std::cout << j.dump() << '\n';
    } else if (*sweep_cmd) {
      Settings st = base_settings(g);
      apply(sweep_pf, st.problem);
      SweepSpec spec = st.sweep;
      spec.problem = st.problem;
      spec.solver = st.solver;
      if (sweep_sf.max_outer) spec.solver.max_outer = *sweep_sf.max_outer;
      if (solvers) spec.solvers = parse_solver_list(*solvers);
      if (p_grid) spec.p_grid = parse_real_list(*p_grid);
      else if (sweep_pf.p) spec.p_grid = {*sweep_pf.p};
      if (s_grid) spec.s_grid = parse_count_list(*s_grid);
      else if (sweep_pf.s) spec.s_grid = {*sweep_pf.s};
      if (mu_grid) spec.mu_grid = parse_real_list(*mu_grid);
      if (L_grid) spec.L_grid = parse_count_list(*L_grid);
      if (tau_grid) spec.tau_grid = parse_real_list(*tau_grid);
      if (trials) spec.trials = *trials;
      if (threads) spec.threads = *threads;
      const SweepReport report = run_sweep(spec);
      write_text(out_file(g, "sweep.csv"), sweep_csv(report));
      write_text(out_file(g, "sweep_trials.csv"), trials_csv(report));
      std::cout << sweep_csv(report);
    } else if (*mu_cmd) {
      fp.variant = variant == "flat" ? FeasibilityVariant::Flat : FeasibilityVariant::General;
      if (variant != "flat" && variant != "general")
        throw std::invalid_argument("variant must be general or flat");
      const MuInterval iv = feasible_mu_range(fp);
      nlohmann::json j;
      j["variant"] = variant;
      j["tau"] = fp.tau;
      j["p"] = fp.p;
      j["feasible"] = iv.feasible;
      if (iv.feasible) {
        j["mu_lo"] = iv.lo;
        j["mu_hi"] = iv.hi;
      }
      std::cout << j.dump() << '\n';
    } else if (*maxp_cmd) {
      if (grid_variant != "flat" && grid_variant != "general")
        throw std::invalid_argument("variant must be general or flat");
      gp.variant = grid_variant == "flat" ? FeasibilityVariant::Flat : FeasibilityVariant::General;
      const auto taus = parse_real_list(maxp_tau.value_or(
          gp.variant == FeasibilityVariant::Flat ? "0.1:0.001:0.5" : "0.1:0.001:0.7"));
      const auto ps = parse_real_list(maxp_p.value_or("0.001:0.0001:0.5"));
      const MaxPGrid grid = max_p_grid(taus, ps, gp);
      write_text(out_file(g, "maxp_grid.csv"), max_p_grid_csv(grid));
      std::string summary = "tau,max_p\n";
      for (std::size_t i = 0; i < grid.taus.size(); ++i)
        summary += std::to_string(grid.taus[i]) + ',' +
                   (grid.max_p[i] ? std::to_string(*grid.max_p[i]) : std::string()) + '\n';
      write_text(out_file(g, "maxp_summary.csv"), summary);
      std::cout << summary;
    } else if (*ric_cmd) {
      Settings st = base_settings(g);
      ProblemSpec ps = st.problem;
      if (ric_m) ps.m = *ric_m;
      if (ric_n) ps.n = *ric_n;
      ps.s = 0;
      ps.outliers = OutlierKind::None;
      ps.p = 0.0;
      const RecoveryProblem pb = generate(ps);
      if (ric_mode != "gaussian" && ric_mode != "vertex")
        throw std::invalid_argument("mode must be gaussian or vertex");
      const RicEstimate est =
          estimate_ric1(pb.A, ric_s, ric_samples, trial_seed(ps.seed, 1),
                        ric_mode == "vertex" ? RicSampling::Vertex : RicSampling::Gaussian,
                        ric_threads);
      nlohmann::json j;
      j["m"] = ps.m;
      j["n"] = ps.n;
      j["s"] = est.s;
      j["samples"] = est.samples;
      j["mode"] = ric_mode;
      j["delta_hat"] = est.delta_hat;
      j["worst_support"] = est.worst_support;
      j["note"] = "lower bound on delta_s";
      std::cout << j.dump() << '\n';
    } else if (*mnist_cmd) {
      Settings st = base_settings(g, MnistSpec{}.solver);
      ms.solver = st.solver;
      apply(mnist_sf, ms.solver);
      ms.seed = st.problem.seed;
      ms.image_indices = parse_count_list(images);
      ms.solvers = parse_solver_list(mnist_solvers);
      const IdxImages idx = read_idx_file(idx_path);
      const MnistReport report = run_mnist(idx, ms);
      write_text(out_file(g, "mnist.csv"), mnist_csv(report));
      std::cout << mnist_csv(report);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const IdxError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
