#pragma once

#include <stdexcept>
#include <string>

#include "bhd/matrix.hpp"

namespace bhd {

/// Thrown when an iterative numerical procedure fails to converge; never
/// returns a silently wrong result instead.
class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

/// Sorted eigenvalues with a column-orthonormal eigenvector matrix
/// (column j pairs with values[j]).
struct EigenDecomposition {
  std::vector<double> values;
  Matrix vectors;
};

struct TridiagonalReduction {
  TridiagonalSymmetric tridiagonal;
  Matrix transform;  // orthogonal Q with A = Q T Q^T
};

/// Reduce a symmetric banded matrix to tridiagonal form by Householder
/// reflectors, accumulating the orthogonal transform. A matrix that is
/// already tridiagonal is returned unchanged with Q = I exactly.
TridiagonalReduction reduce_to_tridiagonal(const BandedSymmetric& m);

/// Implicit-shift QL iteration with eigenvector accumulation.
/// Deterministic; throws NumericalFailure after 50 sweeps for any eigenvalue.
EigenDecomposition eig_symmetric_tridiagonal(const TridiagonalSymmetric& t);

/// Diagonalize a symmetric banded matrix: Householder reduction followed by
/// QL, with the eigenvectors back-transformed through the reduction.
EigenDecomposition eig_banded(const BandedSymmetric& m);

}  // namespace bhd
