#pragma once

#include "bhd/matrix.hpp"
#include "bhd/model.hpp"

namespace bhd {

/// H_BH = -J(aL+ aR + aR+ aL) + U[nL(nL-1) + nR(nR-1)] in the site-number
/// basis |nL=k, nR=N-k>, k = 0..N. Tridiagonal: the hopping term only
/// connects neighbouring occupation numbers.
TridiagonalSymmetric build_hamiltonian_site_basis(const ModelParams& p);

/// H = -S_x + u S_z^2 in the S_x eigenbasis |n>, n = -N/2..N/2 (half-integer
/// for odd N), stored at index i = n + N/2. S_z^2 is assembled from the exact
/// ladder matrix elements, so the only nonzero bands are the diagonal and the
/// second super-diagonal.
BandedSymmetric build_hamiltonian_spin_basis(const ModelParams& p);

/// C_N = N^2 U/2 - N U, the constant relating H_BH to the rescaled spin
/// Hamiltonian: spec(H_BH) = 2JN spec(H_spin) + C_N.
double energy_offset_cn(const ModelParams& p);

/// Raising amplitude of the S_x-basis ladder operator:
/// S~_+|n> = ladder_plus(N, n) |n+1>, without the 1/N normalization.
double ladder_plus(int N, double n);

}  // namespace bhd
