#include "ladhtp/solvers.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "ladhtp/quantile.hpp"
#include "ladhtp/stepsize.hpp"

namespace ladhtp {

std::string_view to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::FHTP1: return "FHTP1";
    case SolverKind::GFHTP1: return "GFHTP1";
    case SolverKind::AIHT: return "AIHT";
    case SolverKind::PSGD: return "PSGD";
  }
  return "?";
}

SolverKind parse_solver_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "fhtp1") return SolverKind::FHTP1;
  if (lower == "gfhtp1") return SolverKind::GFHTP1;
  if (lower == "aiht") return SolverKind::AIHT;
  if (lower == "psgd") return SolverKind::PSGD;
  throw std::invalid_argument("unknown solver '" + std::string(name) + "'");
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::OuterTolerance: return "OuterTolerance";
    case Termination::SupportRepeat: return "SupportRepeat";
    case Termination::MaxIterations: return "MaxIterations";
    case Termination::Diverged: return "Diverged";
  }
  return "?";
}

void validate(const SolverConfig& cfg) {
  auto fail = [](const char* msg) { throw std::invalid_argument(msg); };
  if (!(cfg.mu > 0.0)) fail("solver config: mu must be positive");
  if (!(cfg.tau > 0.0 && cfg.tau < 1.0)) fail("solver config: tau must lie in (0,1)");
  if (cfg.inner_budget < 1) fail("solver config: inner budget L must be >= 1");
  if (cfg.max_outer && *cfg.max_outer < 1) fail("solver config: max_outer must be >= 1");
  if (!(cfg.eps_inner > 0.0) || !(cfg.eps_outer > 0.0)) fail("solver config: tolerances must be positive");
  if (!(cfg.aiht_mu > 0.0) || !(cfg.psgd_mu0 > 0.0) || !(cfg.psgd_decay > 0.0))
    fail("solver config: baseline step parameters must be positive");
  if (cfg.baseline_max_iter < 1 || !(cfg.baseline_tol > 0.0))
    fail("solver config: bad baseline stopping rule");
}

namespace {

struct Problem {
  const DenseMatrix& A;
  std::span<const double> b;
};

Vector initial_point(const Problem& pb, const SolverConfig& cfg) {
  if (pb.b.size() != pb.A.rows()) throw std::invalid_argument("solver: b length does not match A");
  if (!cfg.x0) return Vector(pb.A.cols(), 0.0);
  if (cfg.x0->size() != pb.A.cols()) throw std::invalid_argument("solver: x0 length does not match A");
  check_finite(*cfg.x0, "x0");
  return *cfg.x0;
}

std::size_t required_sparsity(const Problem& pb, const SolverConfig& cfg) {
  if (!cfg.sparsity) throw std::invalid_argument("solver: sparsity s is required");
  const std::size_t s = *cfg.sparsity;
  if (s < 1 || s > pb.A.cols()) throw std::invalid_argument("solver: sparsity must lie in [1, n]");
  return s;
}

Vector residual_sparse(const Problem& pb, std::span<const double> x) {
  Vector r = matvec_on_support(pb.A, x, support_of(x));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = pb.b[i] - r[i];
  return r;
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double a) { return std::isfinite(a); });
}

/// ||u - prev|| / ||prev||, falling back to the absolute change when prev = 0.
double relative_change(std::span<const double> u, std::span<const double> prev) {
  const double diff = distance2(u, prev);
  const double base = norm2(prev);
  return base > 0.0 ? diff / base : diff;
}

SolverResult solve_htp(const Problem& pb, const SolverConfig& cfg, bool graded) {
  validate(cfg);
  const std::size_t n = pb.A.cols();
  const std::size_t s = graded ? 0 : required_sparsity(pb, cfg);
  const std::size_t max_outer = cfg.max_outer.value_or((pb.A.rows() + 1) / 2);
  auto mu_at = [&](std::size_t k, std::size_t l) {
    if (!cfg.mu_schedule) return cfg.mu;
    const double mu = cfg.mu_schedule(k, l);
    if (!(mu > 0.0)) throw std::invalid_argument("solver: mu schedule returned a non-positive value");
    return mu;
  };

  SolverResult out;
  Vector x = initial_point(pb, cfg);
  SupportSet support = support_of(x);
  std::optional<SupportSet> previous;

  for (std::size_t k = 0;; ++k) {
    const Vector r = residual_sparse(pb, x);
    if (!all_finite(r)) {
      out.terminated_by = Termination::Diverged;
      break;
    }
    const double trunc = truncated_l1_value(r, cfg.tau);
    if (trunc <= cfg.eps_outer) {
      out.terminated_by = Termination::OuterTolerance;
      break;
    }
    if (!graded && previous && *previous == support) {
      out.terminated_by = Termination::SupportRepeat;
      break;
    }
    if (k >= max_outer) {
      out.terminated_by = Termination::MaxIterations;
      break;
    }

    const double t0 = mu_at(k + 1, 0) * kSqrtHalfPi * trunc;
    const Vector g = transpose_matvec(pb.A, sign_vector(r));
    Vector v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = x[j] + t0 * g[j];
    Thresholded h = hard_threshold(v, graded ? std::min(k + 1, n) : s);

    const SupportSet& next = h.support;
    Vector u_prev = x;
    Vector u = std::move(h.vector);
    std::size_t used = 0;
    for (std::size_t l = 1; l <= cfg.inner_budget; ++l) {
      if (relative_change(u, u_prev) <= cfg.eps_inner) break;
      Vector ru = matvec_on_support(pb.A, u, next);
      for (std::size_t i = 0; i < ru.size(); ++i) ru[i] = pb.b[i] - ru[i];
      const double t = mu_at(k + 1, l) * kSqrtHalfPi * truncated_l1_value(ru, cfg.tau);
      const Vector gs = transpose_matvec_on_support(pb.A, sign_vector(ru), next);
      Vector u_next(n, 0.0);
      for (std::size_t q = 0; q < next.size(); ++q) u_next[next[q]] = u[next[q]] + t * gs[q];
      if (cfg.inner_observer) cfg.inner_observer(InnerStep{k, l, u_next, next});
      u_prev = std::move(u);
      u = std::move(u_next);
      ++used;
    }

    out.trace.push_back({k, next, trunc, t0, used});
    previous = std::move(support);
    support = next;
    x = std::move(u);
    out.outer_iters = k + 1;
  }
  out.x_hat = std::move(x);
  return out;
}

enum class Baseline { AIHT, PSGD };

SolverResult solve_baseline(const Problem& pb, const SolverConfig& cfg, Baseline kind) {
  validate(cfg);
  const std::size_t s = required_sparsity(pb, cfg);
  const std::size_t n = pb.A.cols();

  SolverResult out;
  Vector x = initial_point(pb, cfg);
  out.terminated_by = Termination::MaxIterations;
  double psgd_step = cfg.psgd_mu0;
  for (std::size_t k = 0; k < cfg.baseline_max_iter; ++k) {
    const Vector r = residual_sparse(pb, x);
    const double l1 = norm1(r);
    const double t = kind == Baseline::AIHT ? cfg.aiht_mu * kSqrtHalfPi * l1 : psgd_step;
    psgd_step *= cfg.psgd_decay;
    if (!all_finite(r) || !std::isfinite(t)) {
      out.terminated_by = Termination::Diverged;
      break;
    }

    const Vector g = transpose_matvec(pb.A, sign_vector(r));
    Vector v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = x[j] + t * g[j];
    Thresholded h = hard_threshold(v, s);
    const double change = relative_change(h.vector, x);

    out.trace.push_back({k, std::move(h.support), l1, t, 0});
    x = std::move(h.vector);
    out.outer_iters = k + 1;
    if (!std::isfinite(change)) {
      out.terminated_by = Termination::Diverged;
      break;
    }
    if (change <= cfg.baseline_tol) {
      out.terminated_by = Termination::OuterTolerance;
      break;
    }
  }
  out.x_hat = std::move(x);
  return out;
}

}  // namespace

SolverResult solve_fhtp1(const DenseMatrix& A, std::span<const double> b, const SolverConfig& cfg) {
  return solve_htp({A, b}, cfg, false);
}

SolverResult solve_gfhtp1(const DenseMatrix& A, std::span<const double> b, const SolverConfig& cfg) {
  return solve_htp({A, b}, cfg, true);
}

SolverResult solve_aiht(const DenseMatrix& A, std::span<const double> b, const SolverConfig& cfg) {
  return solve_baseline({A, b}, cfg, Baseline::AIHT);
}

SolverResult solve_psgd(const DenseMatrix& A, std::span<const double> b, const SolverConfig& cfg) {
  return solve_baseline({A, b}, cfg, Baseline::PSGD);
}

SolverResult solve(SolverKind kind, const DenseMatrix& A, std::span<const double> b,
                   const SolverConfig& cfg) {
  switch (kind) {
    case SolverKind::FHTP1: return solve_fhtp1(A, b, cfg);
    case SolverKind::GFHTP1: return solve_gfhtp1(A, b, cfg);
    case SolverKind::AIHT: return solve_aiht(A, b, cfg);
    case SolverKind::PSGD: return solve_psgd(A, b, cfg);
  }
  throw std::logic_error("solve: unhandled solver kind");
}

std::string trace_to_jsonl(const SolverResult& result) {
  std::string out;
  for (const auto& e : result.trace) {
    nlohmann::json j;
    j["k"] = e.k;
    j["support"] = e.support;
    j["trunc_res_l1"] = e.truncated_residual_l1;
    j["step_t0"] = e.step_t0;
    j["inner_iters"] = e.inner_iters_used;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace ladhtp
