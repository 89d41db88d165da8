#pragma once

#include <complex>
#include <span>
#include <vector>

#include "bhd/model.hpp"
#include "bhd/timeseries.hpp"

namespace bhd {

enum class StateBasis { site, sx };

/// Normalized complex amplitude vector tagged with its basis. Site basis is
/// indexed by n_L = 0..N; the S_x basis by n = -N/2..N/2 at index n + N/2.
struct QuantumState {
  std::vector<std::complex<double>> amplitudes;
  StateBasis basis;
};

/// Initial condition of the quench: either all particles on the left site or
/// the two-site coherent state (cos(a) aR+ + sin(a) aL+)^N |0>. all_left is
/// the alpha = pi/2 special case.
struct InitialCondition {
  enum class Kind { all_left, two_site };
  Kind kind = Kind::all_left;
  double alpha = 0.0;

  static InitialCondition all_left() { return {Kind::all_left, 0.0}; }
  static InitialCondition two_site(double alpha) { return {Kind::two_site, alpha}; }

  /// alpha with all_left mapped to pi/2 (sin a = 1 puts every boson on L).
  double effective_alpha() const;
};

/// Collapse/revival scales and validity indicators of the analytic formula.
/// Construction throws std::domain_error for two_site with |cos 2a| < 1e-6
/// (beta diverges at equal occupation).
struct RevivalParams {
  double beta = 1.0;    // 1/cos^2(2a)
  double gamma = 1.0;   // (1 - (3/4) u sin 2a)^-1
  double n_max = 0.0;   // (N/2) sin 2a
  double eps1 = 0.0;    // Gaussian-tail validity indicator
  double eps2 = 0.0;    // (u/2) sin 2a, higher-order smallness
  double T_c = 0.0;     // collapse time sqrt(2N)/(Ju)
  double T_R = 0.0;     // revival time gamma*pi*N/(uJ)
  double T_B = 0.0;     // blurring time m_max * T_R
  double T_B_closed_form = 0.0;  // pi sqrt(2) N^(3/2) / (3 u^2 J)
  double m_max = 0.0;   // sqrt(2(pi^2 N - 8)) / (3 u pi)

  /// Width of the m-th revival peak, sqrt(2N(1 + (9/16) u^2 m^2 pi^2))/(Ju).
  double revival_width(int m) const;

 private:
  friend RevivalParams timescales(const ModelParams&, const InitialCondition&);
  double J_ = 0.0;
  double u_ = 0.0;
  double N_ = 0.0;
};

/// Exact normalized amplitudes of the initial state in either basis.
/// Site basis: sqrt(binom(N,k)) sin^k(a) cos^(N-k)(a) at n_L = k.
/// S_x basis: the exact binomial c_n (computed in log space).
QuantumState initial_state(int N, const InitialCondition& ic, StateBasis basis);

struct ExactEvolution {
  TimeSeries delta;  // <S_z>(t) = occupation difference /(2N)... normalized to [-1/2,1/2]
  TimeSeries s_y;    // <S_y>(t)
};

/// Spectrally exact time evolution of Delta(t) and <S_y>(t): diagonalizes the
/// site-basis Hamiltonian once and evolves with phases e^{-iEt} in the
/// physical Bose-Hubbard eigenvalues. threads > 1 splits the grid; results
/// are grid-order independent.
ExactEvolution evolve_delta_exact(const ModelParams& p, const InitialCondition& ic,
                                  std::span<const double> times, int threads = 1);

/// Full evolved state at one time (site basis), for norm and state checks.
QuantumState evolve_state(const ModelParams& p, const InitialCondition& ic, double t);

enum class PhaseConvention {
  truncated,  // phi = J(2 + u^2/8 + u/N)
  full,       // phi = J(2 + u^2/8 + u/N - u^2/(2N^2))
  bare_rabi,  // phi = 2J
};

enum class EnvelopeForm {
  printed,   // the closed collapse/revival formula exactly as published
  integral,  // per-revival complex Gaussian integrals of the level-difference sum
};

struct AnalyticDelta {
  TimeSeries delta;
  TimeSeries envelope;  // |complex m-sum|, the collapse/revival envelope
};

/// Analytic collapse/revival formula for Delta(t). The m-sum is accumulated
/// as one complex number per time; a revival term enters when its Gaussian
/// argument is within 6 widths and m <= m_max + 2. The general-case prefactor
/// is sqrt(beta(N^2/4 - n_max^2))/N with the sign fixed by
/// Delta(0) = -cos(2a)/2.
AnalyticDelta analytic_delta(const ModelParams& p, const InitialCondition& ic,
                             std::span<const double> times,
                             PhaseConvention phase = PhaseConvention::truncated,
                             EnvelopeForm form = EnvelopeForm::printed,
                             int threads = 1);

/// Collapse and revival timescales plus validity indicators. u = 0 reports
/// the divergent times as infinity.
RevivalParams timescales(const ModelParams& p, const InitialCondition& ic);

/// The Gaussian-integral quantities of the revival calculation, with
/// mbar = gamma*m: A, B, the decomposition B^2/4A = (D_R + i D_I)/D_D, the
/// phase of A and the stationary phase phi_s.
struct GaussianCoefficients {
  std::complex<double> A;
  std::complex<double> B;
  double D_R = 0.0;  // completed-square form
  double D_I = 0.0;
  double D_D = 0.0;
  double phi_A = 0.0;
  double phi_s = 0.0;
};

GaussianCoefficients envelope_coefficients(const ModelParams& p, double m, double tau,
                                           double beta, double gamma);

/// Eigenstate-dressing corrections: R = e^{-u^2/32}, the phase
/// phi'_s = (u^2/8)(2J tau + (3/2) m pi), and the first-order multiplicative
/// factor built from A, B and n_max (1 for all_left up to O(u/N)).
struct CorrectionFactors {
  double R = 1.0;
  double phi_s_prime = 0.0;
  std::complex<double> first_order_factor = 1.0;
};

CorrectionFactors correction_factors(const ModelParams& p, double m, double tau,
                                     const InitialCondition& ic);

/// Discrete-sum oracle: Eq.-by-Eq. summation of the level-difference series
/// with exact binomial c_n and second-order semiclassical phase differences.
/// Returns <S~_+>(t) scaled by 2/N, so Delta(t) = Re(.)/2.
std::complex<double> discrete_sum_reference(const ModelParams& p,
                                            const InitialCondition& ic, double t);

/// Closed-form counterpart of discrete_sum_reference near revival m: the
/// complex Gaussian integral of the same series (Poisson image m), same 2/N
/// scale. Validates the collapse/revival envelope against the oracle.
std::complex<double> gaussian_closed_form(const ModelParams& p,
                                          const InitialCondition& ic, int m,
                                          double tau);

/// Semiclassical eigenstate overlap check: C~_2 = (uN/4)(1/4 - k^2/N^2),
/// predicted overlaps <n|n+-2l>' = (+-1)^l J_l(C~_2), measured overlaps from
/// the diagonalized spin-basis Hamiltonian.
struct BesselOverlap {
  double c2_tilde = 0.0;
  double predicted = 0.0;      // J_l(C~_2)
  double measured_plus = 0.0;  // <k+2l|k>'
  double measured_minus = 0.0; // <k-2l|k>'
};

BesselOverlap bessel_overlap_check(const ModelParams& p, int k, int l);

}  // namespace bhd
