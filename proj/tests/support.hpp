#pragma once

#include <complex>
#include <random>
#include <vector>

#include "hshear/types.hpp"

namespace testing {

using hshear::cplx;

inline std::vector<cplx> polar_grid(const std::vector<double>& radii, int m) {
  std::vector<cplx> out;
  for (const double r : radii) {
    for (int k = 0; k < m; ++k) out.push_back(std::polar(r, 2.0 * hshear::kPi * (k + 0.25) / m));
  }
  return out;
}

inline cplx random_in_disk(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(radius * std::sqrt(u(rng)), 2.0 * hshear::kPi * u(rng));
}

inline cplx random_unimodular(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * hshear::kPi);
  return std::polar(1.0, u(rng));
}

// Centered difference of order 4.
template <class F>
cplx derivative_fd(F&& f, cplx z, double h = 1e-4) {
  return (-f(z + 2.0 * h) + 8.0 * f(z + h) - 8.0 * f(z - h) + f(z - 2.0 * h)) / (12.0 * h);
}

}  // namespace testing
