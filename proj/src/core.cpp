#include "ladhtp/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ladhtp {

namespace {

void require_length(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (got " +
                                std::to_string(got) + ", expected " +
                                std::to_string(want) + ")");
  }
}

void check_support(const SupportSet& S, std::size_t n) {
  for (std::size_t i = 0; i < S.size(); ++i) {
    if (S[i] >= n) throw std::out_of_range("support index out of range");
    if (i > 0 && S[i] <= S[i - 1]) {
      throw std::invalid_argument("support must be strictly increasing");
    }
  }
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : DenseMatrix(rows, cols, std::vector<double>(rows * cols, 0.0)) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows_ == 0 || cols_ == 0) throw std::invalid_argument("DenseMatrix: empty shape");
  require_length(data_.size(), rows_ * cols_, "DenseMatrix");
  check_finite(data_, "DenseMatrix");
}

Vector matvec(const DenseMatrix& A, std::span<const double> x) {
  require_length(x.size(), A.cols(), "matvec");
  Vector y(A.rows());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    auto r = A.row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) acc += r[j] * x[j];
    y[i] = acc;
  }
  return y;
}

Vector matvec_on_support(const DenseMatrix& A, std::span<const double> x,
                         const SupportSet& support) {
  require_length(x.size(), A.cols(), "matvec");
  check_support(support, A.cols());
  Vector y(A.rows());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    auto r = A.row(i);
    double acc = 0.0;
    for (std::size_t j : support) acc += r[j] * x[j];
    y[i] = acc;
  }
  return y;
}

Vector transpose_matvec(const DenseMatrix& A, std::span<const double> v) {
  require_length(v.size(), A.rows(), "transpose_matvec");
  Vector y(A.cols(), 0.0);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    const double vi = v[i];
    if (vi == 0.0) continue;
    auto r = A.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) y[j] += r[j] * vi;
  }
  return y;
}

Vector transpose_matvec_on_support(const DenseMatrix& A, std::span<const double> v,
                                   const SupportSet& support) {
  require_length(v.size(), A.rows(), "transpose_matvec");
  check_support(support, A.cols());
  Vector y(support.size(), 0.0);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    const double vi = v[i];
    if (vi == 0.0) continue;
    auto r = A.row(i);
    for (std::size_t q = 0; q < support.size(); ++q) y[q] += r[support[q]] * vi;
  }
  return y;
}

Vector residual(const DenseMatrix& A, std::span<const double> x, std::span<const double> b) {
  require_length(b.size(), A.rows(), "residual");
  Vector r = matvec(A, x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  return r;
}

Vector sign_vector(std::span<const double> v) {
  Vector s(v.size());
  std::transform(v.begin(), v.end(), s.begin(),
                 [](double a) { return a > 0.0 ? 1.0 : (a < 0.0 ? -1.0 : 0.0); });
  return s;
}

Thresholded hard_threshold(std::span<const double> x, std::size_t s) {
  if (s > x.size()) throw std::invalid_argument("hard_threshold: s exceeds vector length");
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto before = [&](std::size_t a, std::size_t b) {
    const double fa = std::abs(x[a]);
    const double fb = std::abs(x[b]);
    return fa != fb ? fa > fb : a < b;
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(s), order.end(),
                    before);

  Thresholded out{Vector(x.size(), 0.0), {}};
  out.support.reserve(s);
  for (std::size_t q = 0; q < s; ++q) {
    const std::size_t i = order[q];
    if (x[i] != 0.0) {
      out.vector[i] = x[i];
      out.support.push_back(i);
    }
  }
  std::sort(out.support.begin(), out.support.end());
  return out;
}

Vector restrict_to_support(std::span<const double> x, const SupportSet& S) {
  check_support(S, x.size());
  Vector out(x.size(), 0.0);
  for (std::size_t i : S) out[i] = x[i];
  return out;
}

SupportSet support_of(std::span<const double> x) {
  SupportSet S;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0.0) S.push_back(i);
  return S;
}

double norm1(std::span<const double> x) {
  double acc = 0.0;
  for (double v : x) acc += std::abs(v);
  return acc;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

double dot(std::span<const double> x, std::span<const double> y) {
  require_length(y.size(), x.size(), "dot");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

double distance2(std::span<const double> x, std::span<const double> y) {
  require_length(y.size(), x.size(), "distance2");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

void check_finite(std::span<const double> x, const char* what) {
  for (double v : x) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": non-finite entry");
  }
}

}  // namespace ladhtp
