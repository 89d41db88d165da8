#include "bhd/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "bhd/bessel.hpp"
#include "bhd/eigensolver.hpp"
#include "bhd/fock_model.hpp"
#include "bhd/spectra.hpp"

namespace bhd {

namespace {

constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;

double log_binom(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double log_binom_real(int n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// Geometry of the initial condition used by the analytic formulas. all_left
// is kept exact (sin 2a = 0, cos 2a = -1) rather than evaluated at a = pi/2.
struct Geometry {
  double sin2a = 0.0;
  double cos2a = -1.0;
  double beta = 1.0;
  double gamma = 1.0;
  double n_max = 0.0;
  double sign = 1.0;       // common sign of the c_n c_{n+1} products
  double log_rho = 0.0;    // ln(cos a + sin a)
  double log_sigma = 0.0;  // ln|sin a - cos a|
};

void check_alpha(const InitialCondition& ic) {
  if (ic.kind == InitialCondition::Kind::two_site &&
      !(ic.alpha >= 0.0 && ic.alpha <= kPi / 2.0))
    throw std::invalid_argument("InitialCondition: alpha must lie in [0, pi/2]");
}

Geometry geometry(const ModelParams& p, const InitialCondition& ic, bool need_beta) {
  Geometry g;
  if (ic.kind == InitialCondition::Kind::all_left) return g;
  check_alpha(ic);
  g.sin2a = std::sin(2.0 * ic.alpha);
  g.cos2a = std::cos(2.0 * ic.alpha);
  if (need_beta && std::abs(g.cos2a) < 1e-6)
    throw std::domain_error("RevivalParams: beta diverges for alpha near pi/4");
  g.beta = 1.0 / (g.cos2a * g.cos2a);
  g.gamma = 1.0 / (1.0 - 0.75 * p.u * g.sin2a);
  g.n_max = p.N / 2.0 * g.sin2a;
  g.sign = (std::sin(ic.alpha) >= std::cos(ic.alpha)) ? 1.0 : -1.0;
  g.log_rho = std::log(std::cos(ic.alpha) + std::sin(ic.alpha));
  g.log_sigma = std::log(std::abs(std::sin(ic.alpha) - std::cos(ic.alpha)));
  return g;
}

void parallel_over_grid(std::size_t count, int threads,
                        const std::function<void(std::size_t, std::size_t)>& run) {
  if (threads <= 1 || count < 64) {
    run(0, count);
    return;
  }
  std::size_t nt = std::min<std::size_t>(threads, count);
  std::vector<std::thread> pool;
  std::size_t chunk = (count + nt - 1) / nt;
  for (std::size_t t = 0; t < nt; ++t) {
    std::size_t lo = t * chunk;
    std::size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(run, lo, hi);
  }
  for (auto& th : pool) th.join();
}

// Level-difference phase coefficients of the second-order spectrum:
// E_n - E_{n+1} = J(a0 + a1 n + a2 n^2).
struct PhaseCoefficients {
  double a0, a1, a2;
};

PhaseCoefficients spectrum_difference_coefficients(const ModelParams& p) {
  double N = p.N, u = p.u;
  return {2.0 + u / N + u * u / 8.0 - u * u / (2.0 * N * N),
          2.0 * u / N - 1.5 * u * u / (N * N), -1.5 * u * u / (N * N)};
}

// m-th Poisson image of the level-difference sum: the complex Gaussian
// integral of the summand, evaluated by steepest descent around the
// distribution center with the cubic/quartic 1/N correction factor. Scaled by
// 2/N like discrete_sum_reference.
cd poisson_image(const ModelParams& p, const Geometry& g, int m, double t) {
  const double N = p.N, J = p.J;
  const PhaseCoefficients pc = spectrum_difference_coefficients(p);
  const cd I(0.0, 1.0);
  cd val;

  if (p.N >= 8) {
    // ln of the exact summand magnitude w(x) c(x) c(x+1) at lattice coordinate x
    auto L = [&](double x) {
      double lw = 0.5 * (std::log(N / 2.0 + x + 1.0) + std::log(N / 2.0 - x));
      double lb = 0.5 * (log_binom_real(p.N, N / 2.0 + x) +
                         log_binom_real(p.N, N / 2.0 + x + 1.0));
      return lw + lb - N * std::numbers::ln2 + (N + 2.0 * x + 1.0) * g.log_rho +
             (N - 2.0 * x - 1.0) * g.log_sigma;
    };
    const double x0 = std::clamp(g.n_max, -N / 2.0 + 3.0, N / 2.0 - 3.0);
    const double Lm2 = L(x0 - 2.0), Lm1 = L(x0 - 1.0), L0 = L(x0), Lp1 = L(x0 + 1.0),
                 Lp2 = L(x0 + 2.0);
    const double L1 = (-Lp2 + 8.0 * Lp1 - 8.0 * Lm1 + Lm2) / 12.0;
    const double L2 = (-Lp2 + 16.0 * Lp1 - 30.0 * L0 + 16.0 * Lm1 - Lm2) / 12.0;
    const double L3 = (Lp2 - 2.0 * Lp1 + 2.0 * Lm1 - Lm2) / 2.0;
    const double L4 = Lp2 - 4.0 * Lp1 + 6.0 * L0 - 4.0 * Lm1 + Lm2;

    const double phi0 = J * t * (pc.a0 + pc.a1 * x0 + pc.a2 * x0 * x0) - 2.0 * kPi * m * x0;
    const double phi1 = J * t * (pc.a1 + 2.0 * pc.a2 * x0) - 2.0 * kPi * m;
    const double phi2 = 2.0 * J * t * pc.a2;

    const cd h0 = L0 - I * phi0;
    const cd h1 = L1 - I * phi1;
    const cd h2 = L2 - I * phi2;
    const cd a = -h2 / 2.0;
    const cd mu = h1 / (2.0 * a);
    const cd s2 = 1.0 / (2.0 * a);
    const cd m3 = mu * mu * mu + 3.0 * mu * s2;
    const cd m4 = mu * mu * (mu * mu + 6.0 * s2) + 3.0 * s2 * s2;
    const cd m6 = ((mu * mu + 15.0 * s2) * mu * mu + 45.0 * s2 * s2) * mu * mu +
                  15.0 * s2 * s2 * s2;
    const cd bracket = 1.0 + L3 * m3 / 6.0 + L4 * m4 / 24.0 + L3 * L3 * m6 / 72.0;
    val = g.sign * std::exp(h0 + h1 * mu / 2.0) * std::sqrt(kPi / a) * bracket;
  } else {
    // small N: plain Gaussian model of the summand
    cd a = 2.0 * g.beta / N + I * (J * t * pc.a2);
    cd b = (2.0 * g.beta / N) * (1.0 - 2.0 * g.n_max) + I * (J * t * pc.a1) -
           2.0 * kPi * I * static_cast<double>(m);
    cd c = (2.0 * g.beta / N) * (g.n_max * g.n_max - g.n_max + 0.5) + I * (J * t * pc.a0);
    double W = std::sqrt(N * N / 4.0 - g.n_max * g.n_max);
    val = g.sign * W * std::sqrt(2.0 * g.beta / (kPi * N)) * std::sqrt(kPi / a) *
          std::exp(b * b / (4.0 * a) - c);
  }
  if (p.N % 2 != 0 && m % 2 != 0) val = -val;  // half-integer n lattice
  return val * (2.0 / N);
}

struct SpectralTables {
  int N = 0;
  std::vector<double> E;               // kept eigenvalues
  std::vector<std::vector<double>> V;  // kept eigenvectors, V[j][k]
  std::vector<double> a;               // overlaps with the initial state
  std::vector<double> Gw;              // M x M pair weights for S_z
  std::vector<double> Pw;              // M x M pair weights for the S_y sum
  std::size_t M = 0;
};

SpectralTables build_tables(const ModelParams& p, const InitialCondition& ic) {
  SpectralTables tab;
  tab.N = p.N;
  EigenDecomposition eig = eig_symmetric_tridiagonal(build_hamiltonian_site_basis(p));
  QuantumState psi0 = initial_state(p.N, ic, StateBasis::site);
  const std::size_t D = eig.values.size();

  std::vector<double> overlaps(D, 0.0);
  double amax = 0.0;
  for (std::size_t j = 0; j < D; ++j) {
    double acc = 0.0;
    for (std::size_t k = 0; k < D; ++k) acc += eig.vectors(k, j) * psi0.amplitudes[k].real();
    overlaps[j] = acc;
    amax = std::max(amax, std::abs(acc));
  }
  for (std::size_t j = 0; j < D; ++j) {
    if (std::abs(overlaps[j]) <= 1e-14 * amax) continue;
    tab.E.push_back(eig.values[j]);
    tab.a.push_back(overlaps[j]);
    tab.V.push_back(eig.vectors.column(j));
  }
  tab.M = tab.E.size();

  const int N = p.N;
  tab.Gw.assign(tab.M * tab.M, 0.0);
  tab.Pw.assign(tab.M * tab.M, 0.0);
  for (std::size_t j = 0; j < tab.M; ++j)
    for (std::size_t jp = 0; jp < tab.M; ++jp) {
      double gz = 0.0, gy = 0.0;
      for (int k = 0; k <= N; ++k) {
        gz += tab.V[j][k] * ((2.0 * k - N) / (2.0 * N)) * tab.V[jp][k];
        if (k < N) gy += tab.V[j][k] * std::sqrt((k + 1.0) * (N - k)) * tab.V[jp][k + 1];
      }
      tab.Gw[j * tab.M + jp] = tab.a[j] * tab.a[jp] * gz;
      tab.Pw[j * tab.M + jp] = tab.a[j] * tab.a[jp] * gy;
    }
  return tab;
}

}  // namespace

double InitialCondition::effective_alpha() const {
  return kind == Kind::all_left ? kPi / 2.0 : alpha;
}

QuantumState initial_state(int N, const InitialCondition& ic, StateBasis basis) {
  if (N < 1) throw std::invalid_argument("initial_state: N must be >= 1");
  check_alpha(ic);
  QuantumState st;
  st.basis = basis;
  st.amplitudes.assign(static_cast<std::size_t>(N) + 1, cd(0.0, 0.0));

  if (basis == StateBasis::site) {
    if (ic.kind == InitialCondition::Kind::all_left) {
      st.amplitudes[N] = 1.0;
      return st;
    }
    double sa = std::sin(ic.alpha), ca = std::cos(ic.alpha);
    for (int k = 0; k <= N; ++k) {
      if ((sa == 0.0 && k > 0) || (ca == 0.0 && k < N)) continue;
      double lg = 0.5 * log_binom(N, k);
      if (k > 0) lg += k * std::log(sa);
      if (k < N) lg += (N - k) * std::log(ca);
      st.amplitudes[k] = std::exp(lg);
    }
  } else {
    // c_n = 2^{-N/2} sqrt(binom(N, N/2+n)) rho^{N/2+n} sigma^{N/2-n},
    // rho = cos a + sin a, sigma = sin a - cos a  (all_left: rho = sigma = 1)
    double rho = 1.0, sigma = 1.0;
    if (ic.kind == InitialCondition::Kind::two_site) {
      rho = std::cos(ic.alpha) + std::sin(ic.alpha);
      sigma = std::sin(ic.alpha) - std::cos(ic.alpha);
    }
    double asig = std::abs(sigma);
    for (int i = 0; i <= N; ++i) {
      if (asig == 0.0 && i < N) continue;
      double lg = 0.5 * log_binom(N, i) - 0.5 * N * std::numbers::ln2;
      if (i > 0) lg += i * std::log(rho);
      if (i < N) lg += (N - i) * std::log(asig);
      double s = (sigma < 0.0 && (N - i) % 2 != 0) ? -1.0 : 1.0;
      st.amplitudes[i] = s * std::exp(lg);
    }
  }

  double norm = 0.0;
  for (const auto& z : st.amplitudes) norm += std::norm(z);
  norm = std::sqrt(norm);
  for (auto& z : st.amplitudes) z /= norm;
  return st;
}

ExactEvolution evolve_delta_exact(const ModelParams& p, const InitialCondition& ic,
                                  std::span<const double> times, int threads) {
  SpectralTables tab = build_tables(p, ic);
  ExactEvolution out;
  out.delta.times.assign(times.begin(), times.end());
  out.delta.values.resize(times.size());
  out.delta.label = "delta_exact";
  out.s_y.times = out.delta.times;
  out.s_y.values.resize(times.size());
  out.s_y.label = "sy_exact";

  const std::size_t M = tab.M;
  auto run = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t it = lo; it < hi; ++it) {
      double t = times[it];
      double dz = 0.0, sy = 0.0;
      for (std::size_t j = 0; j < M; ++j) {
        dz += tab.Gw[j * M + j];
        for (std::size_t jp = j + 1; jp < M; ++jp) {
          double ph = (tab.E[j] - tab.E[jp]) * t;
          dz += 2.0 * tab.Gw[j * M + jp] * std::cos(ph);
          sy += (tab.Pw[j * M + jp] - tab.Pw[jp * M + j]) * std::sin(ph);
        }
      }
      out.delta.values[it] = dz;
      out.s_y.values[it] = -sy / p.N;
    }
  };
  parallel_over_grid(times.size(), threads, run);
  return out;
}

QuantumState evolve_state(const ModelParams& p, const InitialCondition& ic, double t) {
  EigenDecomposition eig = eig_symmetric_tridiagonal(build_hamiltonian_site_basis(p));
  QuantumState psi0 = initial_state(p.N, ic, StateBasis::site);
  const std::size_t D = eig.values.size();
  QuantumState out;
  out.basis = StateBasis::site;
  out.amplitudes.assign(D, cd(0.0, 0.0));
  for (std::size_t j = 0; j < D; ++j) {
    double a = 0.0;
    for (std::size_t k = 0; k < D; ++k) a += eig.vectors(k, j) * psi0.amplitudes[k].real();
    cd phase = std::exp(cd(0.0, -eig.values[j] * t)) * a;
    for (std::size_t k = 0; k < D; ++k) out.amplitudes[k] += phase * eig.vectors(k, j);
  }
  return out;
}

RevivalParams timescales(const ModelParams& p, const InitialCondition& ic) {
  Geometry g = geometry(p, ic, /*need_beta=*/true);
  RevivalParams rp;
  rp.beta = g.beta;
  rp.gamma = g.gamma;
  rp.n_max = g.n_max;
  double N = p.N;
  rp.eps1 = (1.0 / std::sqrt(N)) * (2.0 / (1.0 - g.sin2a)) * std::abs(g.cos2a);
  rp.eps2 = p.u / 2.0 * g.sin2a;
  rp.J_ = p.J;
  rp.u_ = p.u;
  rp.N_ = N;
  if (p.u == 0.0) {
    double inf = std::numeric_limits<double>::infinity();
    rp.T_c = rp.T_R = rp.T_B = rp.T_B_closed_form = rp.m_max = inf;
    return rp;
  }
  rp.T_c = std::sqrt(2.0 * N) / (p.J * p.u);
  rp.T_R = g.gamma * kPi * N / (p.u * p.J);
  rp.m_max = std::sqrt(2.0 * (kPi * kPi * N - 8.0)) / (3.0 * p.u * kPi);
  rp.T_B = rp.m_max * rp.T_R;
  rp.T_B_closed_form = kPi * std::sqrt(2.0) * std::pow(N, 1.5) / (3.0 * p.u * p.u * p.J);
  return rp;
}

double RevivalParams::revival_width(int m) const {
  if (u_ == 0.0) return std::numeric_limits<double>::infinity();
  double k = 1.0 + (9.0 / 16.0) * u_ * u_ * m * m * kPi * kPi;
  return std::sqrt(2.0 * N_ * k) / (J_ * u_);
}

GaussianCoefficients envelope_coefficients(const ModelParams& p, double m, double tau,
                                           double beta, double gamma) {
  if (!(beta >= 1.0))
    throw std::invalid_argument("envelope_coefficients: beta must be >= 1");
  const double N = p.N, u = p.u, J = p.J;
  const double mbar = gamma * m;
  const double arg = mbar * kPi + J * u * tau / N;

  GaussianCoefficients out;
  out.A = cd(2.0 * beta, -1.5 * u * arg) / N;
  out.B = cd(beta, J * u * tau) * (2.0 / N);
  out.D_D = 4.0 * beta * beta + 2.25 * u * u * arg * arg;
  double shifted = tau + 3.0 * mbar * kPi / (2.0 * J);
  out.D_R = -(2.0 * beta / N) * J * J * u * u * shifted * shifted +
            2.0 * beta * beta * beta / N +
            (9.0 / (2.0 * N)) * u * u * mbar * mbar * kPi * kPi * beta;
  out.D_I = (4.0 * J * u * tau * beta * beta + 1.5 * u * beta * beta * arg -
             1.5 * J * J * u * u * u * tau * tau * arg) /
            N;
  out.phi_A = std::atan(-(3.0 / (4.0 * beta)) * u * arg);
  out.phi_s = out.D_I / out.D_D - out.phi_A / 2.0;
  return out;
}

CorrectionFactors correction_factors(const ModelParams& p, double m, double tau,
                                     const InitialCondition& ic) {
  Geometry g = geometry(p, ic, /*need_beta=*/true);
  const double u = p.u, N = p.N;
  CorrectionFactors out;
  out.R = std::exp(-u * u / 32.0);
  out.phi_s_prime = (u * u / 8.0) * (2.0 * p.J * tau + 1.5 * m * kPi);
  GaussianCoefficients gc = envelope_coefficients(p, m, tau, g.beta, g.gamma);
  cd ba = gc.B / (2.0 * gc.A);
  out.first_order_factor =
      1.0 - (u / 2.0) * (g.beta * (1.0 - 4.0 * g.n_max * g.n_max / (N * N)) * (0.5 - ba) +
                         2.0 * g.n_max / N);
  return out;
}

std::complex<double> discrete_sum_reference(const ModelParams& p,
                                            const InitialCondition& ic, double t) {
  QuantumState c = initial_state(p.N, ic, StateBasis::sx);
  const int N = p.N;
  cd acc(0.0, 0.0);
  for (int i = 0; i < N; ++i) {
    double n = i - N / 2.0;
    double w = ladder_plus(N, n);
    double dE = semiclassical_second(p, n) - semiclassical_second(p, n + 1.0);
    acc += w * c.amplitudes[i].real() * c.amplitudes[i + 1].real() *
           std::exp(cd(0.0, -dE * t));
  }
  return acc * (2.0 / N);
}

std::complex<double> gaussian_closed_form(const ModelParams& p,
                                          const InitialCondition& ic, int m,
                                          double tau) {
  if (m < 0) throw std::invalid_argument("gaussian_closed_form: m must be >= 0");
  Geometry g = geometry(p, ic, /*need_beta=*/true);
  double t;
  if (p.u == 0.0) {
    if (m != 0) throw std::invalid_argument("gaussian_closed_form: no revivals at u = 0");
    t = tau;
  } else {
    t = m * (g.gamma * kPi * p.N / (p.u * p.J)) + tau;
  }
  return poisson_image(p, g, m, t);
}

AnalyticDelta analytic_delta(const ModelParams& p, const InitialCondition& ic,
                             std::span<const double> times, PhaseConvention phase,
                             EnvelopeForm form, int threads) {
  Geometry g = geometry(p, ic, /*need_beta=*/true);
  const double N = p.N, u = p.u, J = p.J;

  AnalyticDelta out;
  out.delta.times.assign(times.begin(), times.end());
  out.delta.values.resize(times.size());
  out.delta.label = "delta_analytic";
  out.envelope.times = out.delta.times;
  out.envelope.values.resize(times.size());
  out.envelope.label = "envelope_analytic";

  if (u == 0.0) {
    // exact u -> 0 limit: pure Rabi rotation of the initial S_z
    double amp = -g.cos2a / 2.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      out.delta.values[i] = amp * std::cos(2.0 * J * times[i]);
      out.envelope.values[i] = std::abs(amp);
    }
    return out;
  }

  const double T_R = g.gamma * kPi * N / (u * J);
  const double m_max = std::sqrt(2.0 * (kPi * kPi * N - 8.0)) / (3.0 * u * kPi);
  const int m_cap = static_cast<int>(std::floor(m_max)) + 2;
  const double R = std::exp(-u * u / 32.0);

  double phi;
  switch (phase) {
    case PhaseConvention::truncated: phi = J * (2.0 + u * u / 8.0 + u / N); break;
    case PhaseConvention::full:
      phi = J * (2.0 + u * u / 8.0 + u / N - u * u / (2.0 * N * N));
      break;
    case PhaseConvention::bare_rabi: phi = 2.0 * J; break;
  }
  const double prefactor = g.sign * std::sqrt(g.beta * (N * N / 4.0 - g.n_max * g.n_max)) / N;

  auto run = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const double t = times[i];
      cd z(0.0, 0.0);
      for (int m = 0; m <= m_cap; ++m) {
        double tau = t - m * T_R;
        double shifted = t + 3.0 * m * kPi / (2.0 * J) - m * T_R;
        double kbar = g.beta * g.beta +
                      (9.0 / 16.0) * u * u * m * m * g.gamma * g.gamma * kPi * kPi;
        double sigma = std::sqrt(N * kbar / g.beta) / (J * u);
        if (std::min(std::abs(tau), std::abs(shifted)) > 6.0 * sigma) continue;

        if (form == EnvelopeForm::printed) {
          double eta = g.beta * g.beta * g.beta / 2.0 +
                       (9.0 / 8.0) * g.beta * u * u * m * m * kPi * kPi;
          double amp = R / std::pow(kbar, 0.25) *
                       std::exp((-0.5 * J * J * u * u * g.beta * shifted * shifted + eta) /
                                (N * kbar));
          double phi1 = (u * u / (8.0 * g.beta)) * (2.0 * J * tau + 1.5 * m * g.gamma * kPi) +
                        u * (J * tau * g.beta * g.beta / N +
                             (3.0 / (8.0 * g.beta)) * (m * g.gamma * kPi + J * u * tau / N));
          z += amp * std::exp(cd(0.0, phi1));
        } else {
          double phi1p = (u * u / 8.0) * (2.0 * J * tau + 1.5 * m * kPi);
          z += poisson_image(p, g, m, t) * R * std::exp(cd(0.0, phi1p));
        }
      }
      if (form == EnvelopeForm::printed) {
        out.delta.values[i] = prefactor * (z * std::exp(cd(0.0, -phi * t))).real();
        out.envelope.values[i] = std::abs(prefactor) * std::abs(z);
      } else {
        out.delta.values[i] = z.real() / 2.0;
        out.envelope.values[i] = std::abs(z) / 2.0;
      }
    }
  };
  parallel_over_grid(times.size(), threads, run);
  return out;
}

BesselOverlap bessel_overlap_check(const ModelParams& p, int k, int l) {
  if (p.N % 2 != 0)
    throw std::invalid_argument("bessel_overlap_check: requires even N");
  if (l < 0 || std::abs(k) + 2 * l > p.N / 2)
    throw std::invalid_argument("bessel_overlap_check: requires |k| + 2l <= N/2");

  BesselOverlap out;
  double N = p.N;
  out.c2_tilde = (p.u * N / 4.0) * (0.25 - static_cast<double>(k) * k / (N * N));
  out.predicted = bessel_j(l, out.c2_tilde);

  EigenDecomposition eig = eig_banded(build_hamiltonian_spin_basis(p));
  const int half = p.N / 2;
  std::vector<double> v = eig.vectors.column(half - k);  // ascending energy <-> descending n
  if (v[k + half] < 0.0)
    for (auto& x : v) x = -x;
  out.measured_plus = v[k + 2 * l + half];
  out.measured_minus = v[k - 2 * l + half];
  return out;
}

}  // namespace bhd
