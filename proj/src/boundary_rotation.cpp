#include "hshear/boundary_rotation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace hshear {

int default_rotation_samples(double r) {
  int n = 8192;
  const double needed = 30.0 / (1.0 - r);
  while (n < needed && n < (1 << 24)) n *= 2;
  return n;
}

RotationValue boundary_rotation_value(const AnalyticFunction& phi, double r, int n) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("radius must lie in (0, 1)");
  if (n < 8) throw DomainError("too few quadrature samples");
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    const cplx z = std::polar(r, 2.0 * kPi * j / n);
    const Derivatives d = phi.derivatives(z);
    if (std::abs(d.d1) <= 1e-12) throw DomainError("phi' vanishes on the sampling circle");
    sum += std::abs((1.0 + z * d.d2 / d.d1).real());
  }
  // (1/pi) * (2 pi / n) * sum
  return {r, 2.0 * sum / n};
}

RotationValue boundary_rotation_value(const AnalyticFunction& phi, double r) {
  return boundary_rotation_value(phi, r, default_rotation_samples(r));
}

AnalyticFunction brannan_transform(const AnalyticFunction& phi, cplx lambda, int power,
                                   const QuadratureConfig& cfg) {
  lambda = unimodular(lambda, "Brannan lambda");
  if (power < 1) throw DomainError("Brannan transform needs N >= 1");
  char buf[96];
  std::snprintf(buf, sizeof buf, "brannan[lambda=%.6g%+.6gi,N=%d](", lambda.real(),
                lambda.imag(), power);
  // Q = (1 - lambda z^N)/(1 + lambda z^N), Q' = -2 lambda N z^{N-1} / (1 + lambda z^N)^2.
  return integrate_derivative(
      buf + phi.label() + ")",
      [phi, lambda, power](cplx z) {
        const Derivatives p = phi.derivatives(z);
        const cplx zn1 = std::pow(z, power - 1);
        const cplx lzn = lambda * zn1 * z;
        const cplx den = 1.0 / (1.0 + lzn);
        const cplx q = (1.0 - lzn) * den;
        const cplx dq = -2.0 * lambda * static_cast<double>(power) * zn1 * den * den;
        return Derivatives{p.d1 * q, p.d2 * q + p.d1 * dq};
      },
      cfg);
}

MembershipResult vk_membership(const AnalyticFunction& phi, double k,
                               const std::vector<double>& radii, double tol) {
  MembershipResult out;
  for (const double r : radii) {
    out.values.push_back(boundary_rotation_value(phi, r));
    out.max_value = std::max(out.max_value, out.values.back().value_over_pi);
  }
  out.member = out.max_value <= k + tol;
  return out;
}

}  // namespace hshear
