#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace ladhtp {

using Vector = std::vector<double>;

/// Sorted, duplicate-free list of indices into a vector.
using SupportSet = std::vector<std::size_t>;

/**
 * Dense m x n matrix stored row-major.
 *
 * Entries must be finite; the constructor validates shape and contents.
 */
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> data() const { return data_; }
  std::vector<double>& mutable_data() { return data_; }

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Returns Ax.
Vector matvec(const DenseMatrix& A, std::span<const double> x);

/// Returns Ax using only the columns listed in `support`; x must vanish off it.
/// Bitwise equal to matvec() for such x.
Vector matvec_on_support(const DenseMatrix& A, std::span<const double> x,
                         const SupportSet& support);

/// Returns A^T v.
Vector transpose_matvec(const DenseMatrix& A, std::span<const double> v);

/// Returns the entries of A^T v listed in `support`, packed in support order.
Vector transpose_matvec_on_support(const DenseMatrix& A, std::span<const double> v,
                                   const SupportSet& support);

/// Returns b - Ax.
Vector residual(const DenseMatrix& A, std::span<const double> x, std::span<const double> b);

/// Elementwise sign with sign(0) = 0.
Vector sign_vector(std::span<const double> v);

struct Thresholded {
  Vector vector;
  SupportSet support;
};

/**
 * Hard thresholding operator H_s.
 *
 * Keeps the s entries of largest magnitude, breaking ties by lowest index,
 * and zeroes the rest. The returned support is the nonzero support of the
 * output, so it can hold fewer than s indices.
 */
Thresholded hard_threshold(std::span<const double> x, std::size_t s);

/// (x)_S: keeps entries indexed by S, zeroes the others.
Vector restrict_to_support(std::span<const double> x, const SupportSet& S);

/// Indices of nonzero entries.
SupportSet support_of(std::span<const double> x);

double norm1(std::span<const double> x);
double norm2(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);

/// ||x - y||_2
double distance2(std::span<const double> x, std::span<const double> y);

void check_finite(std::span<const double> x, const char* what);

}  // namespace ladhtp
