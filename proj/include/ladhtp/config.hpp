#pragma once

#include <map>
#include <string>
#include <vector>

#include "ladhtp/bench.hpp"

namespace ladhtp {

/// key = value lines; '#' starts a comment. Later keys override earlier ones.
using ConfigMap = std::map<std::string, std::string>;

ConfigMap parse_config(const std::string& text);
ConfigMap read_config_file(const std::string& path);

// Each apply_* consumes the keys it knows from `cfg` and leaves the rest.
//
// solver:  mu tau inner_budget max_outer eps_inner eps_outer sparsity
//          aiht_mu psgd_mu0 psgd_decay baseline_max_iter baseline_tol
// problem: m n s signal outliers outlier_scale p seed
// sweep:   solvers p_grid s_grid mu_grid L_grid tau_grid trials base_seed
//          success_threshold threads
void apply_solver_config(ConfigMap& cfg, SolverConfig& out);
void apply_problem_spec(ConfigMap& cfg, ProblemSpec& out);
void apply_sweep_spec(ConfigMap& cfg, SweepSpec& out);

/// Throws std::invalid_argument naming the first key nobody consumed.
void reject_unknown_keys(const ConfigMap& cfg);

std::vector<double> parse_real_list(const std::string& text);
std::vector<std::size_t> parse_count_list(const std::string& text);
std::vector<SolverKind> parse_solver_list(const std::string& text);

}  // namespace ladhtp
