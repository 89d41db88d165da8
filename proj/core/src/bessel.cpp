#include "bhd/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace bhd {

double bessel_j(int l, double x) {
  if (l < 0) throw std::domain_error("bessel_j: order must be >= 0");
  if (!(std::abs(x) < 10.0))
    throw std::domain_error("bessel_j: power series restricted to |x| < 10");

  const double half = 0.5 * x;
  // leading term (x/2)^l / l!
  double term = 1.0;
  for (int k = 1; k <= l; ++k) term *= half / k;
  double sum = term;
  for (int j = 1; j <= 60; ++j) {
    term *= -(half * half) / (static_cast<double>(j) * (j + l));
    sum += term;
    if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
  }
  return sum;
}

}  // namespace bhd
