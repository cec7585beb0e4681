#include "ladhtp/probgen.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "ladhtp/stepsize.hpp"

namespace ladhtp {

std::string_view to_string(SignalKind k) {
  switch (k) {
    case SignalKind::Gaussian: return "gaussian";
    case SignalKind::Flat: return "flat";
    case SignalKind::External: return "external";
  }
  return "?";
}

std::string_view to_string(OutlierKind k) {
  switch (k) {
    case OutlierKind::None: return "none";
    case OutlierKind::Gaussian: return "gaussian";
    case OutlierKind::Uniform: return "uniform";
  }
  return "?";
}

SignalKind parse_signal_kind(std::string_view s) {
  if (s == "gaussian") return SignalKind::Gaussian;
  if (s == "flat") return SignalKind::Flat;
  if (s == "external") return SignalKind::External;
  throw std::invalid_argument("unknown signal kind '" + std::string(s) + "'");
}

OutlierKind parse_outlier_kind(std::string_view s) {
  if (s == "none") return OutlierKind::None;
  if (s == "gaussian") return OutlierKind::Gaussian;
  if (s == "uniform") return OutlierKind::Uniform;
  throw std::invalid_argument("unknown outlier kind '" + std::string(s) + "'");
}

std::size_t outlier_count(const ProblemSpec& spec) {
  return static_cast<std::size_t>(std::llround(spec.p * static_cast<double>(spec.m)));
}

void validate(const ProblemSpec& spec) {
  if (spec.m < 1 || spec.n < 1) throw std::invalid_argument("problem spec: m and n must be >= 1");
  if (spec.s > spec.n) throw std::invalid_argument("problem spec: s exceeds n");
  if (!(spec.p >= 0.0 && spec.p < 1.0)) throw std::invalid_argument("problem spec: p must lie in [0,1)");
  if (spec.outliers != OutlierKind::None && !(spec.outlier_scale > 0.0))
    throw std::invalid_argument("problem spec: outlier scale must be positive");
}

double Rng::uniform() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::normal() { return normal_inverse_cdf(uniform()); }

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: zero bound");
  // Rejection keeps the result unbiased.
  const std::uint64_t limit = (~std::uint64_t{0}) - (~std::uint64_t{0}) % bound;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % bound;
}

SupportSet Rng::sample_without_replacement(std::size_t n, std::size_t k) {
  if (k > n) throw std::invalid_argument("sample_without_replacement: k exceeds n");
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(below(n - i));
    std::swap(pool[i], pool[j]);
  }
  SupportSet out(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

DenseMatrix draw_matrix(Rng& rng, std::size_t m, std::size_t n) {
  std::vector<double> data(m * n);
  const double scale = 1.0 / static_cast<double>(m);
  for (double& a : data) a = scale * rng.normal();
  return DenseMatrix(m, n, std::move(data));
}

void fill_outliers(Rng& rng, RecoveryProblem& pb) {
  const ProblemSpec& spec = pb.spec;
  pb.eta.assign(spec.m, 0.0);
  if (spec.outliers == OutlierKind::None) {
    pb.T.clear();
    return;
  }
  pb.T = rng.sample_without_replacement(spec.m, outlier_count(spec));
  for (std::size_t i : pb.T) {
    pb.eta[i] = spec.outliers == OutlierKind::Gaussian
                    ? spec.outlier_scale * rng.normal()
                    : spec.outlier_scale * (2.0 * rng.uniform() - 1.0);
  }
}

void assemble(RecoveryProblem& pb) {
  pb.b = matvec(pb.A, pb.x0);
  for (std::size_t i = 0; i < pb.b.size(); ++i) pb.b[i] += pb.eta[i];
}

}  // namespace

RecoveryProblem generate(const ProblemSpec& spec) {
  validate(spec);
  if (spec.signal == SignalKind::External)
    throw std::invalid_argument("generate: external signals need generate_for_signal");
  if (spec.outliers == OutlierKind::None && outlier_count(spec) > 0)
    throw std::invalid_argument("generate: p > 0 requires an outlier kind");

  Rng rng(spec.seed);
  RecoveryProblem pb;
  pb.spec = spec;
  pb.A = draw_matrix(rng, spec.m, spec.n);
  pb.x0.assign(spec.n, 0.0);
  for (std::size_t j : rng.sample_without_replacement(spec.n, spec.s))
    pb.x0[j] = spec.signal == SignalKind::Flat ? 1.0 : rng.normal();
  fill_outliers(rng, pb);
  assemble(pb);
  return pb;
}

RecoveryProblem generate_for_signal(const Vector& x0, ProblemSpec spec) {
  check_finite(x0, "generate_for_signal");
  spec.n = x0.size();
  spec.s = support_of(x0).size();
  spec.signal = SignalKind::External;
  validate(spec);
  if (spec.outliers == OutlierKind::None && outlier_count(spec) > 0)
    throw std::invalid_argument("generate: p > 0 requires an outlier kind");

  Rng rng(spec.seed);
  RecoveryProblem pb;
  pb.spec = spec;
  pb.A = draw_matrix(rng, spec.m, spec.n);
  pb.x0 = x0;
  fill_outliers(rng, pb);
  assemble(pb);
  return pb;
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial_index) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(base_seed) ^ (trial_index * 0xd1342543de82ef95ULL + 0x632be59bd9b4e019ULL));
}

// --- binary container ------------------------------------------------------

namespace {

constexpr char kMagic[8] = {'L', 'A', 'D', 'P', 'R', 'O', 'B', '1'};

void put_u64(std::ostream& os, std::uint64_t v) {
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(buf, 8);
}

void put_f64(std::ostream& os, double v) { put_u64(os, std::bit_cast<std::uint64_t>(v)); }

std::uint64_t get_u64(std::istream& is) {
  unsigned char buf[8];
  if (!is.read(reinterpret_cast<char*>(buf), 8)) throw std::invalid_argument("problem file: truncated");
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | buf[i];
  return v;
}

double get_f64(std::istream& is) { return std::bit_cast<double>(get_u64(is)); }

Vector get_vector(std::istream& is, std::size_t len) {
  Vector v(len);
  for (double& x : v) x = get_f64(is);
  return v;
}

}  // namespace

void write_problem(std::ostream& os, const RecoveryProblem& pb) {
  const ProblemSpec& s = pb.spec;
  os.write(kMagic, sizeof kMagic);
  put_u64(os, s.m);
  put_u64(os, s.n);
  put_u64(os, s.s);
  put_u64(os, static_cast<std::uint64_t>(s.signal));
  put_u64(os, static_cast<std::uint64_t>(s.outliers));
  put_f64(os, s.outlier_scale);
  put_f64(os, s.p);
  put_u64(os, s.seed);
  put_u64(os, pb.T.size());
  for (double a : pb.A.data()) put_f64(os, a);
  for (double v : pb.b) put_f64(os, v);
  for (double v : pb.x0) put_f64(os, v);
  for (double v : pb.eta) put_f64(os, v);
  for (std::size_t i : pb.T) put_u64(os, i);
  if (!os) throw std::invalid_argument("problem file: write failed");
}

RecoveryProblem read_problem(std::istream& is) {
  char magic[8];
  if (!is.read(magic, 8) || !std::equal(magic, magic + 8, kMagic))
    throw std::invalid_argument("problem file: bad magic");
  RecoveryProblem pb;
  ProblemSpec& s = pb.spec;
  s.m = get_u64(is);
  s.n = get_u64(is);
  s.s = get_u64(is);
  const auto signal = get_u64(is);
  const auto outliers = get_u64(is);
  if (signal > 2 || outliers > 2) throw std::invalid_argument("problem file: bad kind tag");
  s.signal = static_cast<SignalKind>(signal);
  s.outliers = static_cast<OutlierKind>(outliers);
  s.outlier_scale = get_f64(is);
  s.p = get_f64(is);
  s.seed = get_u64(is);
  const std::size_t t_count = get_u64(is);
  if (s.m == 0 || s.n == 0 || s.m > (1u << 24) || s.n > (1u << 24) || t_count > s.m)
    throw std::invalid_argument("problem file: implausible dimensions");
  pb.A = DenseMatrix(s.m, s.n, get_vector(is, s.m * s.n));
  pb.b = get_vector(is, s.m);
  pb.x0 = get_vector(is, s.n);
  pb.eta = get_vector(is, s.m);
  pb.T.resize(t_count);
  for (auto& i : pb.T) {
    i = get_u64(is);
    if (i >= s.m) throw std::invalid_argument("problem file: outlier index out of range");
  }
  return pb;
}

void save_problem(const std::string& path, const RecoveryProblem& problem) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::invalid_argument("cannot open '" + path + "' for writing");
  write_problem(os, problem);
}

RecoveryProblem load_problem(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::invalid_argument("cannot open '" + path + "'");
  return read_problem(is);
}

}  // namespace ladhtp
