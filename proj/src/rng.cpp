// SPDX-License-Identifier: Apache-2.0
#include "leosim/rng.hpp"

#include <cmath>

#include "leosim/constants.hpp"

namespace leosim {

double RandomStream::normal() {
  const double u1 = uniform_open();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

long RandomStream::poisson(double lambda) {
  if (lambda <= 0.0) return 0;
  if (lambda < 50.0) {
    // Knuth inversion; p underflows to 0 < limit for pathological lambdas.
    const double limit = std::exp(-lambda);
    double p = 1.0;
    long k = 0;
    do {
      ++k;
      p *= uniform_open();
    } while (p > limit);
    return k - 1;
  }
  const long n = std::lround(lambda + std::sqrt(lambda) * normal());
  return n < 0 ? 0 : n;
}

} // namespace leosim
