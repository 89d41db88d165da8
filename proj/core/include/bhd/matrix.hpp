#pragma once

#include <cstddef>
#include <vector>

namespace bhd {

/// Minimal dense row-major matrix, used for eigenvector accumulation.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, value) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<double> column(std::size_t j) const {
    std::vector<double> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = data_[i * cols_ + j];
    return c;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Real symmetric tridiagonal matrix: diag (length D) and offdiag (length D-1).
struct TridiagonalSymmetric {
  std::vector<double> diag;
  std::vector<double> offdiag;

  TridiagonalSymmetric() = default;
  explicit TridiagonalSymmetric(std::size_t dim)
      : diag(dim, 0.0), offdiag(dim > 0 ? dim - 1 : 0, 0.0) {}

  std::size_t dimension() const { return diag.size(); }
};

/// Real symmetric banded matrix; only the diagonal and the b super-diagonals
/// are stored, so symmetry holds by construction.
struct BandedSymmetric {
  std::size_t dim = 0;
  // bands[k] is the k-th super-diagonal (length dim - k); bands[0] is the diagonal.
  std::vector<std::vector<double>> bands;

  BandedSymmetric() = default;
  BandedSymmetric(std::size_t dim_, std::size_t bandwidth) : dim(dim_) {
    bands.resize(bandwidth + 1);
    for (std::size_t k = 0; k <= bandwidth; ++k)
      bands[k].assign(dim > k ? dim - k : 0, 0.0);
  }

  std::size_t bandwidth() const { return bands.empty() ? 0 : bands.size() - 1; }

  /// Symmetric element access (zero outside the band).
  double at(std::size_t i, std::size_t j) const {
    std::size_t lo = i < j ? i : j;
    std::size_t hi = i < j ? j : i;
    std::size_t k = hi - lo;
    if (k > bandwidth()) return 0.0;
    return bands[k][lo];
  }
};

}  // namespace bhd
