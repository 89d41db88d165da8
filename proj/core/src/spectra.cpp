#include "bhd/spectra.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "bhd/eigensolver.hpp"
#include "bhd/fock_model.hpp"

namespace bhd {

namespace {

constexpr double kPi = std::numbers::pi;

double simpson(const std::function<double(double)>& f, double lo, double hi,
               std::size_t panels) {
  const double h = (hi - lo) / static_cast<double>(panels);
  double sum = f(lo) + f(hi);
  for (std::size_t i = 1; i < panels; ++i)
    sum += f(lo + h * static_cast<double>(i)) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

// Composite Simpson starting at 4096 panels, doubling until two successive
// estimates agree to 1e-10.
double integrate_doubling(const std::function<double(double)>& f, double lo,
                          double hi, const char* what) {
  std::size_t panels = 4096;
  double prev = simpson(f, lo, hi, panels);
  for (int round = 0; round < 8; ++round) {
    panels *= 2;
    double cur = simpson(f, lo, hi, panels);
    if (std::abs(cur - prev) < 1e-10) return cur;
    prev = cur;
  }
  throw NumericalFailure(std::string(what) + ": quadrature did not converge");
}

double first_order_dimensionless(const ModelParams& p, double n) {
  double N = p.N;
  return -n / N + p.u / 8.0 - p.u * n * n / (2.0 * N * N);
}

double second_order_dimensionless(const ModelParams& p, double n) {
  double N = p.N;
  double u2 = p.u * p.u;
  return first_order_dimensionless(p, n) + u2 * (-n / (16.0 * N) + n * n * n / (4.0 * N * N * N));
}

double action_closed_form(double H, double u, ActionOrder order) {
  double I = -H + u / 8.0 - u * H * H / 2.0;
  if (order == ActionOrder::second)
    I += 3.0 * u * u * H / 16.0 - 3.0 * u * u * H * H * H / 4.0;
  return I;
}

struct OrbitDerivatives {
  double s;    // S_x
  double sp;   // dS_x/dphi
  double spp;  // d^2S_x/dphi^2
};

// Implicit derivatives of the exact S_x(phi) branch, from
// H = -S_x + u(1/4 - S_x^2) sin^2(phi).
OrbitDerivatives orbit_derivatives(double H, double u, double phi) {
  OrbitDerivatives d;
  d.s = sx_of_phi(H, u, phi);
  double s2 = std::sin(phi) * std::sin(phi);
  double sin2p = std::sin(2.0 * phi);
  double cos2p = std::cos(2.0 * phi);
  double den = 1.0 + 2.0 * u * d.s * s2;
  d.sp = u * (0.25 - d.s * d.s) * sin2p / den;
  d.spp = (-2.0 * u * d.s * d.sp * sin2p + 2.0 * u * (0.25 - d.s * d.s) * cos2p -
           d.sp * (2.0 * u * d.sp * s2 + 2.0 * u * d.s * sin2p)) /
          den;
  return d;
}

}  // namespace

std::string to_string(SpectrumMethod m) {
  switch (m) {
    case SpectrumMethod::exact: return "exact";
    case SpectrumMethod::bh1: return "bh1";
    case SpectrumMethod::bh2: return "bh2";
    case SpectrumMethod::pert1: return "pert1";
    case SpectrumMethod::pert2: return "pert2";
    case SpectrumMethod::wkb2: return "wkb2";
  }
  return "?";
}

SpectrumMethod spectrum_method_from_string(const std::string& name) {
  if (name == "exact") return SpectrumMethod::exact;
  if (name == "bh1") return SpectrumMethod::bh1;
  if (name == "bh2") return SpectrumMethod::bh2;
  if (name == "pert1") return SpectrumMethod::pert1;
  if (name == "pert2") return SpectrumMethod::pert2;
  if (name == "wkb2") return SpectrumMethod::wkb2;
  throw std::invalid_argument("unknown spectrum method: " + name);
}

std::vector<double> quantum_numbers(int N) {
  std::vector<double> n(static_cast<std::size_t>(N) + 1);
  for (int i = 0; i <= N; ++i) n[i] = i - N / 2.0;
  return n;
}

double to_physical(const ModelParams& p, double dimensionless) {
  return 2.0 * p.J * p.N * dimensionless + energy_offset_cn(p);
}

double semiclassical_first(const ModelParams& p, double n) {
  double N = p.N, u = p.u;
  return 2.0 * p.J * (-n + 3.0 * u * N / 8.0 - u / 2.0 - u * n * n / (2.0 * N));
}

double semiclassical_second(const ModelParams& p, double n) {
  double N = p.N, u = p.u;
  return semiclassical_first(p, n) +
         2.0 * p.J * (-u * u * n / 16.0 + u * u * n * n * n / (4.0 * N * N));
}

double perturbative_spectrum(const ModelParams& p, double n, int order, bool physical) {
  if (order != 1 && order != 2)
    throw std::invalid_argument("perturbative_spectrum: order must be 1 or 2");
  double N = p.N, u = p.u;
  double e = -n / N + (u / 8.0) * (1.0 + 2.0 / N - 4.0 * n * n / (N * N));
  if (order == 2)
    e += (u * u / 16.0) *
         (-(n / N) * (1.0 + 2.0 / N - 2.0 / (N * N)) + 4.0 * n * n * n / (N * N * N));
  return physical ? to_physical(p, e) : e;
}

double sx_of_phi(double H, double u, double phi) {
  double s2 = std::sin(phi) * std::sin(phi);
  double us2 = u * s2;
  double disc = 1.0 + us2 * (us2 - 4.0 * H);
  if (disc < 0.0)
    throw std::domain_error("sx_of_phi: negative discriminant (outside Rabi-regime validity)");
  // "+" branch written without cancellation at u sin^2(phi) -> 0
  double sx = (us2 - 4.0 * H) / (2.0 * (1.0 + std::sqrt(disc)));
  if (std::abs(sx) > 0.5 + 1e-9)
    throw std::domain_error("sx_of_phi: root outside the Bloch sphere (energy outside band)");
  return sx;
}

double action_integral(double H, double u, ActionOrder order) {
  if (order != ActionOrder::exact) return action_closed_form(H, u, order);
  if (u == 0.0) return -H;
  auto f = [&](double phi) { return sx_of_phi(H, u, phi); };
  return integrate_doubling(f, 0.0, 2.0 * kPi, "action_integral") / (2.0 * kPi);
}

double wkb_s2_winding(double H, double u, int N) {
  if (u == 0.0) return 0.0;
  // Orbits crossing S_x = 0 are turning-point orbits of the angle
  // representation; the paper evaluates this regime at the I = 0 orbit, where
  // the integrand is antisymmetric and the winding vanishes.
  if (H >= 0.0 && H <= u / 4.0) return 0.0;
  auto f = [&](double phi) {
    OrbitDerivatives d = orbit_derivatives(H, u, phi);
    return -(1.0 / (4.0 * d.s * d.s)) * (-d.sp * d.sp / (2.0 * d.s) + d.spp);
  };
  double winding = integrate_doubling(f, 0.0, 2.0 * kPi, "wkb_s2_winding");
  return winding / (2.0 * kPi * static_cast<double>(N) * static_cast<double>(N));
}

namespace {

// Smallest |S_x| reached along the H = const orbit. The hbar^2 correction is
// an expansion around S_x away from zero; orbits passing near S_x = 0 are
// turning-point orbits where it does not apply.
double orbit_sx_distance(double H, double u) {
  if (H >= 0.0 && H <= u / 4.0) return 0.0;  // crosses S_x = 0
  if (H < 0.0) return -H;                    // minimum at phi = 0
  return std::abs(sx_of_phi(H, u, kPi / 2.0));
}

}  // namespace

SpectrumResult corrected_spectrum_iterative(const ModelParams& p) {
  if (p.u >= 1.0)
    throw std::invalid_argument("corrected_spectrum_iterative: requires u < 1");
  SpectrumResult out;
  out.method = SpectrumMethod::wkb2;
  out.n = quantum_numbers(p.N);
  out.energies.resize(out.n.size());
  for (std::size_t i = 0; i < out.n.size(); ++i) {
    double e2 = second_order_dimensionless(p, out.n[i]);
    double H = e2;
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      double delta =
          orbit_sx_distance(H, p.u) < p.u / 2.0 ? 0.0 : wkb_s2_winding(H, p.u, p.N);
      // adding delta to the action closed form shifts the level by
      // -delta/I'(H); the correction stays in the frame of the second-order
      // inversion so that delta = 0 reproduces it exactly
      double slope = -1.0 - p.u * H + 3.0 * p.u * p.u / 16.0 -
                     9.0 * p.u * p.u * H * H / 4.0;
      double Hnew = e2 - delta / slope;
      double change = std::abs(Hnew - H);
      H = Hnew;
      if (change < 1e-12) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw NumericalFailure("corrected_spectrum_iterative: no fixed point at n = " +
                             std::to_string(out.n[i]));
    out.energies[i] = to_physical(p, H);
  }
  return out;
}

SpectrumResult compute_spectrum(const ModelParams& p, SpectrumMethod method) {
  SpectrumResult out;
  out.method = method;
  out.n = quantum_numbers(p.N);
  const std::size_t D = out.n.size();
  out.energies.resize(D);
  switch (method) {
    case SpectrumMethod::exact: {
      EigenDecomposition eig = eig_symmetric_tridiagonal(build_hamiltonian_site_basis(p));
      // ascending energy corresponds to descending n in the Rabi regime
      for (std::size_t i = 0; i < D; ++i) out.energies[i] = eig.values[D - 1 - i];
      break;
    }
    case SpectrumMethod::bh1:
      for (std::size_t i = 0; i < D; ++i) out.energies[i] = semiclassical_first(p, out.n[i]);
      break;
    case SpectrumMethod::bh2:
      for (std::size_t i = 0; i < D; ++i) out.energies[i] = semiclassical_second(p, out.n[i]);
      break;
    case SpectrumMethod::pert1:
      for (std::size_t i = 0; i < D; ++i)
        out.energies[i] = perturbative_spectrum(p, out.n[i], 1, true);
      break;
    case SpectrumMethod::pert2:
      for (std::size_t i = 0; i < D; ++i)
        out.energies[i] = perturbative_spectrum(p, out.n[i], 2, true);
      break;
    case SpectrumMethod::wkb2:
      return corrected_spectrum_iterative(p);
  }
  return out;
}

}  // namespace bhd
