#pragma once

namespace bhd {

/// Physical parameters of the two-site Bose-Hubbard model.
///
/// J is the hopping strength, U the on-site interaction, N the conserved
/// particle count. The dimensionless coupling u = U*N/J controls the
/// classical phase-space structure; u < 1 is the Rabi regime.
struct ModelParams {
  double J = 1.0;
  double U = 0.0;
  int N = 1;
  double u = 0.0;  // U*N/J, stored so both parametrizations round-trip

  /// Construct from (J, U, N); derives u = U*N/J.
  static ModelParams from_interaction(double J, double U, int N);

  /// Construct from (J, u, N); derives U = u*J/N.
  static ModelParams from_coupling(double J, double u, int N);

  bool rabi_regime() const { return u < 1.0; }
};

}  // namespace bhd
