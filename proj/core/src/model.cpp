#include "bhd/model.hpp"

#include <stdexcept>

namespace bhd {

namespace {

void validate(double J, double U, int N) {
  if (!(J > 0.0)) throw std::invalid_argument("ModelParams: J must be > 0");
  if (!(U >= 0.0)) throw std::invalid_argument("ModelParams: U must be >= 0");
  if (N < 1) throw std::invalid_argument("ModelParams: N must be >= 1");
}

}  // namespace

ModelParams ModelParams::from_interaction(double J, double U, int N) {
  validate(J, U, N);
  return {J, U, N, U * N / J};
}

ModelParams ModelParams::from_coupling(double J, double u, int N) {
  if (!(u >= 0.0)) throw std::invalid_argument("ModelParams: u must be >= 0");
  double U = u * J / N;
  validate(J, U, N);
  return {J, U, N, u};
}

}  // namespace bhd
