#pragma once

#include <vector>

#include "hshear/analytic.hpp"

namespace hshear {

/// (1/pi) * integral over |z| = r of |Re(1 + z phi''/phi')| d theta.
struct RotationValue {
  double r = 0.0;
  double value_over_pi = 0.0;
};

/// Trapezoid samples used when none are given: at least 8192, and enough
/// that the periodic rule resolves the r^n aliasing term below e^-30.
int default_rotation_samples(double r);

RotationValue boundary_rotation_value(const AnalyticFunction& phi, double r, int n);
RotationValue boundary_rotation_value(const AnalyticFunction& phi, double r);

/// psi with psi(0) = 0 and psi' = phi' (1 - lambda z^N) / (1 + lambda z^N).
AnalyticFunction brannan_transform(const AnalyticFunction& phi, cplx lambda, int power,
                                   const QuadratureConfig& cfg = {});

struct MembershipResult {
  bool member = false;
  double max_value = 0.0;
  std::vector<RotationValue> values;
};

inline const std::vector<double> kDefaultLadder{0.9, 0.99, 0.999};

/// Whether the ladder maximum of value_over_pi stays within k + tol. The
/// supremum over r < 1 in the definition of V_k is approximated by the
/// ladder.
MembershipResult vk_membership(const AnalyticFunction& phi, double k,
                               const std::vector<double>& radii = kDefaultLadder,
                               double tol = 1e-6);

}  // namespace hshear
