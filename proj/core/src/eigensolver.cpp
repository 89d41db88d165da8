#include "bhd/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace bhd {

namespace {

constexpr int kMaxSweeps = 50;

// Implicit-shift QL on (d, e) with plane rotations accumulated into the
// columns of z. Follows the classic tql2 scheme (Bowdler, Martin, Reinsch,
// Wilkinson), 0-based, with e[i] coupling d[i] and d[i+1].
void ql_implicit_shift(std::vector<double>& d, std::vector<double>& e, Matrix& z) {
  const std::size_t n = d.size();
  if (n <= 1) return;
  const double eps = std::numeric_limits<double>::epsilon();
  e.resize(n, 0.0);  // e[n-1] is workspace

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    while (true) {
      std::size_t m = l;
      while (m + 1 < n) {
        double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
        ++m;
      }
      if (m == l) break;
      if (++iter > kMaxSweeps)
        throw NumericalFailure("eig_symmetric_tridiagonal: QL iteration did not converge within 50 sweeps");

      // Wilkinson shift from the leading 2x2, then chase the bulge from m down to l.
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (std::size_t i = m; i-- > l;) {
        double f = s * e[i];
        double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        for (std::size_t k = 0; k < z.rows(); ++k) {
          f = z(k, i + 1);
          z(k, i + 1) = s * z(k, i) + c * f;
          z(k, i) = c * z(k, i) - s * f;
        }
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
}

// Ascending sort with stable tie-breaking by original column index.
EigenDecomposition sorted_decomposition(std::vector<double> d, const Matrix& z) {
  const std::size_t n = d.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = d[idx[j]];
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = z(i, idx[j]);
  }
  return out;
}

Matrix dense_from_banded(const BandedSymmetric& m) {
  Matrix a(m.dim, m.dim, 0.0);
  for (std::size_t i = 0; i < m.dim; ++i)
    for (std::size_t j = i; j < std::min(m.dim, i + m.bandwidth() + 1); ++j) {
      a(i, j) = m.at(i, j);
      a(j, i) = a(i, j);
    }
  return a;
}

}  // namespace

TridiagonalReduction reduce_to_tridiagonal(const BandedSymmetric& m) {
  const std::size_t n = m.dim;
  Matrix a = dense_from_banded(m);
  Matrix q = Matrix::identity(n);
  std::vector<double> v(n), w(n), qv(n);

  for (std::size_t k = 0; k + 2 < n; ++k) {
    double sigma = 0.0;
    for (std::size_t i = k + 2; i < n; ++i) sigma += a(i, k) * a(i, k);
    if (sigma == 0.0) continue;  // column already tridiagonal

    double alpha = a(k + 1, k);
    double r = std::sqrt(alpha * alpha + sigma);
    if (alpha >= 0.0) r = -r;  // avoid cancellation in v[k+1]

    std::fill(v.begin(), v.end(), 0.0);
    v[k + 1] = alpha - r;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = a(i, k);
    double vtv = v[k + 1] * v[k + 1] + sigma;
    double beta = 2.0 / vtv;

    // A <- H A H with H = I - beta v v^T
    double s = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = k; j < n; ++j) acc += a(i, j) * v[j];
      w[i] = beta * acc;
      s += v[i] * w[i];
    }
    for (std::size_t i = 0; i <= k; ++i) {
      double acc = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) acc += a(i, j) * v[j];
      w[i] = beta * acc;
    }
    double half = 0.5 * beta * s;
    for (std::size_t i = 0; i < n; ++i) w[i] -= half * v[i];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        a(i, j) -= v[i] * w[j] + w[i] * v[j];

    // Q <- Q H
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) acc += q(i, j) * v[j];
      qv[i] = beta * acc;
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) q(i, j) -= qv[i] * v[j];
  }

  TridiagonalReduction out;
  out.tridiagonal = TridiagonalSymmetric(n);
  for (std::size_t i = 0; i < n; ++i) out.tridiagonal.diag[i] = a(i, i);
  for (std::size_t i = 0; i + 1 < n; ++i) out.tridiagonal.offdiag[i] = a(i + 1, i);
  out.transform = std::move(q);
  return out;
}

EigenDecomposition eig_symmetric_tridiagonal(const TridiagonalSymmetric& t) {
  std::vector<double> d = t.diag;
  std::vector<double> e = t.offdiag;
  Matrix z = Matrix::identity(d.size());
  ql_implicit_shift(d, e, z);
  return sorted_decomposition(std::move(d), z);
}

EigenDecomposition eig_banded(const BandedSymmetric& m) {
  if (m.bandwidth() <= 1) {
    TridiagonalSymmetric t(m.dim);
    t.diag = m.bands[0];
    if (m.bandwidth() == 1) t.offdiag = m.bands[1];
    return eig_symmetric_tridiagonal(t);
  }
  TridiagonalReduction red = reduce_to_tridiagonal(m);
  std::vector<double> d = red.tridiagonal.diag;
  std::vector<double> e = red.tridiagonal.offdiag;
  ql_implicit_shift(d, e, red.transform);
  return sorted_decomposition(std::move(d), red.transform);
}

}  // namespace bhd
