#pragma once

#include <string>
#include <vector>

#include "bhd/model.hpp"

namespace bhd {

enum class SpectrumMethod { exact, bh1, bh2, pert1, pert2, wkb2 };

std::string to_string(SpectrumMethod m);
SpectrumMethod spectrum_method_from_string(const std::string& name);

/// One spectrum: quantum numbers n = -N/2..N/2 (half-integer for odd N) and
/// the energies in physical Bose-Hubbard units (2JN scale and C_N included).
struct SpectrumResult {
  std::vector<double> n;
  std::vector<double> energies;
  SpectrumMethod method;
};

/// Quantum numbers -N/2..N/2 in ascending order.
std::vector<double> quantum_numbers(int N);

/// Physical units: E = 2JN * e + C_N.
double to_physical(const ModelParams& p, double dimensionless);

/// First-order semiclassical level: 2J(-n + 3uN/8 - u/2 - u n^2/(2N)).
double semiclassical_first(const ModelParams& p, double n);

/// Second-order semiclassical level:
/// 2J(-n + 3uN/8 - u/2 - u n^2/(2N) - u^2 n/16 + u^2 n^3/(4N^2)).
double semiclassical_second(const ModelParams& p, double n);

/// Rayleigh-Schrodinger level to the given order (1 or 2), dimensionless by
/// default; physical=true applies the 2JN scale and C_N offset.
double perturbative_spectrum(const ModelParams& p, double n, int order,
                             bool physical = false);

/// The "+" branch of S_x(phi) on the H = const orbit. Throws
/// std::domain_error when the discriminant is negative or the root leaves the
/// Bloch sphere (energy outside the band).
double sx_of_phi(double H, double u, double phi);

enum class ActionOrder { exact, first, second };

/// Action I = (2pi)^-1 \oint S_x dphi: numerical quadrature for
/// ActionOrder::exact, the closed forms -H + u/8 - uH^2/2 (first) and
/// -H + u/8 - uH^2/2 + 3u^2 H/16 - 3u^2 H^3/4 (second) otherwise.
double action_integral(double H, double u, ActionOrder order);

/// hbar^2 WKB correction: the winding of S_2 over one period, scaled by
/// 1/(2 pi N^2). Orbits crossing S_x = 0 (0 <= H <= u/4) return 0 via the
/// antisymmetry of the I = 0 orbit.
double wkb_s2_winding(double H, double u, int N);

/// Iteratively corrected semiclassical spectrum: seed each level with the
/// second-order energy, add the S_2 winding to the action closed form,
/// re-solve for H, repeat to a fixed point, then rescale to physical units.
SpectrumResult corrected_spectrum_iterative(const ModelParams& p);

/// Full spectrum for any method (exact diagonalizes the site-basis H).
SpectrumResult compute_spectrum(const ModelParams& p, SpectrumMethod method);

}  // namespace bhd
