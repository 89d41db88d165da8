#include "bhd/fock_model.hpp"

#include <cmath>

namespace bhd {

TridiagonalSymmetric build_hamiltonian_site_basis(const ModelParams& p) {
  const int N = p.N;
  TridiagonalSymmetric h(static_cast<std::size_t>(N) + 1);
  for (int k = 0; k <= N; ++k) {
    double nl = k, nr = N - k;
    h.diag[k] = p.U * (nl * (nl - 1.0) + nr * (nr - 1.0));
  }
  // hopping: -J aL+ aR connects |k, N-k> to |k+1, N-k-1> with sqrt((k+1)(N-k))
  for (int k = 0; k < N; ++k)
    h.offdiag[k] = -p.J * std::sqrt((k + 1.0) * (N - k));
  return h;
}

double ladder_plus(int N, double n) {
  return std::sqrt((N / 2.0 + n + 1.0) * (N / 2.0 - n));
}

BandedSymmetric build_hamiltonian_spin_basis(const ModelParams& p) {
  const int N = p.N;
  const std::size_t D = static_cast<std::size_t>(N) + 1;
  BandedSymmetric h(D, 2);
  for (std::size_t i = 0; i < D; ++i) {
    double n = static_cast<double>(i) - N / 2.0;
    // S~_+- |n> = (1/N) sqrt((N/2 +- n + 1)(N/2 -+ n)) |n +- 1>
    double gp = ladder_plus(N, n) / N;
    double gm = ladder_plus(N, -n) / N;
    // S_z^2 = (S~_+^2 + S~_-^2 + S~_+ S~_- + S~_- S~_+)/4
    h.bands[0][i] = -n / N + p.u * (gp * gp + gm * gm) / 4.0;
    if (i + 2 < D) {
      double gp_next = ladder_plus(N, n + 1.0) / N;
      h.bands[2][i] = p.u * gp * gp_next / 4.0;
    }
  }
  return h;
}

double energy_offset_cn(const ModelParams& p) {
  double N = p.N;
  return N * N * p.U / 2.0 - N * p.U;
}

}  // namespace bhd
