#include "ladhtp/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ladhtp/stepsize.hpp"

namespace ladhtp {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_real(const std::string& key, const std::string& v) {
  double out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw std::invalid_argument("config: '" + key + "' expects a real, got '" + v + "'");
  return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::uint64_t out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw std::invalid_argument("config: '" + key + "' expects a nonnegative integer, got '" + v + "'");
  return out;
}

template <class F>
void take(ConfigMap& cfg, const std::string& key, F&& apply) {
  auto it = cfg.find(key);
  if (it == cfg.end()) return;
  apply(it->second);
  cfg.erase(it);
}

}  // namespace

ConfigMap parse_config(const std::string& text) {
  ConfigMap out;
  std::istringstream is(text);
  std::size_t lineno = 0;
  for (std::string line; std::getline(is, line);) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

ConfigMap read_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

std::vector<double> parse_real_list(const std::string& text) {
  // lo:step:hi expands to an inclusive range.
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw std::invalid_argument("range must be lo:step:hi, got '" + text + "'");
    return linspace_step(to_real("range", parts[0]), to_real("range", parts[1]),
                         to_real("range", parts[2]));
  }
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(to_real("list", item));
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

std::vector<std::size_t> parse_count_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& item : split(text, ',')) out.push_back(to_u64("list", item));
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

std::vector<SolverKind> parse_solver_list(const std::string& text) {
  std::vector<SolverKind> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_solver_kind(item));
  if (out.empty()) throw std::invalid_argument("empty solver list");
  return out;
}

void apply_solver_config(ConfigMap& cfg, SolverConfig& out) {
  take(cfg, "mu", [&](const auto& v) { out.mu = to_real("mu", v); });
  take(cfg, "tau", [&](const auto& v) { out.tau = to_real("tau", v); });
  take(cfg, "inner_budget", [&](const auto& v) { out.inner_budget = to_u64("inner_budget", v); });
  take(cfg, "max_outer", [&](const auto& v) { out.max_outer = to_u64("max_outer", v); });
  take(cfg, "eps_inner", [&](const auto& v) { out.eps_inner = to_real("eps_inner", v); });
  take(cfg, "eps_outer", [&](const auto& v) { out.eps_outer = to_real("eps_outer", v); });
  take(cfg, "sparsity", [&](const auto& v) { out.sparsity = to_u64("sparsity", v); });
  take(cfg, "aiht_mu", [&](const auto& v) { out.aiht_mu = to_real("aiht_mu", v); });
  take(cfg, "psgd_mu0", [&](const auto& v) { out.psgd_mu0 = to_real("psgd_mu0", v); });
  take(cfg, "psgd_decay", [&](const auto& v) { out.psgd_decay = to_real("psgd_decay", v); });
  take(cfg, "baseline_max_iter",
       [&](const auto& v) { out.baseline_max_iter = to_u64("baseline_max_iter", v); });
  take(cfg, "baseline_tol", [&](const auto& v) { out.baseline_tol = to_real("baseline_tol", v); });
}

void apply_problem_spec(ConfigMap& cfg, ProblemSpec& out) {
  take(cfg, "m", [&](const auto& v) { out.m = to_u64("m", v); });
  take(cfg, "n", [&](const auto& v) { out.n = to_u64("n", v); });
  take(cfg, "s", [&](const auto& v) { out.s = to_u64("s", v); });
  take(cfg, "signal", [&](const auto& v) { out.signal = parse_signal_kind(v); });
  take(cfg, "outliers", [&](const auto& v) { out.outliers = parse_outlier_kind(v); });
  take(cfg, "outlier_scale", [&](const auto& v) { out.outlier_scale = to_real("outlier_scale", v); });
  take(cfg, "p", [&](const auto& v) { out.p = to_real("p", v); });
  take(cfg, "seed", [&](const auto& v) { out.seed = to_u64("seed", v); });
}

void apply_sweep_spec(ConfigMap& cfg, SweepSpec& out) {
  take(cfg, "solvers", [&](const auto& v) { out.solvers = parse_solver_list(v); });
  take(cfg, "p_grid", [&](const auto& v) { out.p_grid = parse_real_list(v); });
  take(cfg, "s_grid", [&](const auto& v) { out.s_grid = parse_count_list(v); });
  take(cfg, "mu_grid", [&](const auto& v) { out.mu_grid = parse_real_list(v); });
  take(cfg, "L_grid", [&](const auto& v) { out.L_grid = parse_count_list(v); });
  take(cfg, "tau_grid", [&](const auto& v) { out.tau_grid = parse_real_list(v); });
  take(cfg, "trials", [&](const auto& v) { out.trials = to_u64("trials", v); });
  take(cfg, "base_seed", [&](const auto& v) { out.base_seed = to_u64("base_seed", v); });
  take(cfg, "success_threshold",
       [&](const auto& v) { out.success_threshold = to_real("success_threshold", v); });
  take(cfg, "threads", [&](const auto& v) { out.threads = static_cast<unsigned>(to_u64("threads", v)); });
}

void reject_unknown_keys(const ConfigMap& cfg) {
  if (!cfg.empty()) throw std::invalid_argument("config: unknown key '" + cfg.begin()->first + "'");
}

}  // namespace ladhtp
