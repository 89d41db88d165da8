#pragma once

namespace bhd {

/// Bessel function of the first kind J_l(x) by its power series,
/// sum_j (-1)^j / (j! (j+l)!) (x/2)^(2j+l), valid for |x| < 10.
/// Throws std::domain_error outside that range or for l < 0.
double bessel_j(int l, double x);

}  // namespace bhd
