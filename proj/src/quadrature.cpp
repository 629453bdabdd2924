#include "hshear/quadrature.hpp"

#include <array>
#include <memory>
#include <mutex>

namespace hshear {

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0)) throw DomainError("quadrature abs_tol must be positive");
  if (order < 5) throw DomainError("quadrature order must be at least 5");
  if (max_subdivisions < 1) throw DomainError("quadrature max_subdivisions must be positive");
}

namespace {

// Newton iteration on P_n, with the usual Chebyshev-like starting guess.
GaussLegendreRule compute_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int order) {
  constexpr int kMaxCached = 128;
  static std::array<std::unique_ptr<GaussLegendreRule>, kMaxCached + 1> cache;
  static std::mutex mu;
  if (order < 1 || order > kMaxCached) throw DomainError("unsupported Gauss-Legendre order");
  std::lock_guard lock(mu);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<GaussLegendreRule>(compute_rule(order));
  return *slot;
}

}  // namespace hshear
