#pragma once

// Adaptive Gauss-Legendre integration of analytic integrands along straight
// segments inside the unit disk.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <type_traits>
#include <vector>

#include "hshear/types.hpp"

namespace hshear {

struct QuadratureConfig {
  double abs_tol = 1e-12;
  /// Maximum bisection depth of any panel.
  int max_subdivisions = 40;
  /// Gauss-Legendre points per panel.
  int order = 15;

  void validate() const;
};

class QuadratureError : public std::runtime_error {
 public:
  enum class Kind { ToleranceNotMet, OutsideDisk };
  QuadratureError(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached per order; safe to call concurrently.
const GaussLegendreRule& gauss_legendre(int order);

/// Points with |z| at or above this radius are flagged as near-boundary.
inline constexpr double kNearBoundaryRadius = 0.999;

template <class Value>
struct SegmentResult {
  Value value;
  double error = 0.0;
  int panels = 0;
  bool near_boundary = false;
};

namespace detail {

template <class T>
struct ValueTraits;

template <>
struct ValueTraits<cplx> {
  static cplx zero() { return {}; }
  static double norm(const cplx& v) { return std::abs(v); }
};

template <int N>
struct ValueTraits<Eigen::Matrix<cplx, N, 1>> {
  static Eigen::Matrix<cplx, N, 1> zero() { return Eigen::Matrix<cplx, N, 1>::Zero(); }
  static double norm(const Eigen::Matrix<cplx, N, 1>& v) { return v.norm(); }
};

}  // namespace detail

/// Integrates `f` along the straight segment [z0, z1].
///
/// Global adaptive scheme: every panel carries a coarse Gauss-Legendre value
/// and the sum over its two halves; the panel with the largest halving
/// difference is bisected until the summed difference falls below
/// max(abs_tol, rounding floor). The rounding floor is 16 eps times the
/// integral of |f| / (1 - |z|), the attainable accuracy in double precision
/// for integrands singular on the unit circle.
template <class F>
auto integrate_segment_detailed(F&& f, cplx z0, cplx z1, const QuadratureConfig& cfg = {})
    -> SegmentResult<std::decay_t<std::invoke_result_t<F&, cplx>>> {
  using Value = std::decay_t<std::invoke_result_t<F&, cplx>>;
  using Traits = detail::ValueTraits<Value>;
  cfg.validate();

  if (!(std::abs(z0) < 1.0) || !(std::abs(z1) < 1.0)) {
    throw QuadratureError(QuadratureError::Kind::OutsideDisk,
                          "integration segment leaves the open unit disk");
  }
  SegmentResult<Value> out{Traits::zero(), 0.0, 0, false};
  out.near_boundary = std::max(std::abs(z0), std::abs(z1)) >= kNearBoundaryRadius;
  if (z0 == z1) return out;

  const GaussLegendreRule& rule = gauss_legendre(cfg.order);
  const cplx dz = z1 - z0;
  const double len = std::abs(dz);

  // Integral over parameter range [a, b] of z0 + t*dz; also accumulates the
  // integral of the integrand's magnitude.
  auto panel_rule = [&](double a, double b, double& abs_int) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    Value acc = Traits::zero();
    double mag = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const cplx z = z0 + (mid + half * rule.nodes[i]) * dz;
      const Value v = f(z);
      acc += rule.weights[i] * v;
      // Rounding of z perturbs an integrand singular on |z| = 1 by a relative
      // eps / (1 - |z|); the noise floor follows that conditioning.
      mag += rule.weights[i] * Traits::norm(v) / (1.0 - std::abs(z));
    }
    abs_int = mag * half * len;
    return Value(acc * (half * dz));
  };

  struct Panel {
    double a, b;
    int depth;
    Value left, right;
    double err, abs_int;
  };
  auto refine = [&](double a, double b, int depth, const Value& coarse) {
    const double m = 0.5 * (a + b);
    double abs_l = 0.0, abs_r = 0.0;
    Panel p{a, b, depth, panel_rule(a, m, abs_l), panel_rule(m, b, abs_r), 0.0, 0.0};
    p.err = Traits::norm(Value(p.left + p.right - coarse));
    p.abs_int = abs_l + abs_r;
    return p;
  };

  constexpr std::size_t kMaxPanels = 1 << 14;
  constexpr double kFloor = 16.0 * std::numeric_limits<double>::epsilon();
  std::vector<Panel> panels;
  double abs0 = 0.0;
  panels.push_back(refine(0.0, 1.0, 0, panel_rule(0.0, 1.0, abs0)));

  for (;;) {
    double err = 0.0, abs_int = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      err += panels[i].err;
      abs_int += panels[i].abs_int;
      if (panels[i].err > panels[worst].err) worst = i;
    }
    const double tol = std::max(cfg.abs_tol, kFloor * abs_int);
    if (err <= tol) {
      Value total = Traits::zero();
      for (const Panel& p : panels) total += p.left + p.right;
      out.value = total;
      out.error = err;
      out.panels = static_cast<int>(panels.size());
      return out;
    }
    if (!std::isfinite(err) || panels[worst].depth >= cfg.max_subdivisions ||
        panels.size() >= kMaxPanels) {
      throw QuadratureError(QuadratureError::Kind::ToleranceNotMet,
                            "quadrature tolerance not met after maximum subdivisions");
    }
    const Panel p = panels[worst];
    const double m = 0.5 * (p.a + p.b);
    panels[worst] = refine(p.a, m, p.depth + 1, p.left);
    panels.push_back(refine(m, p.b, p.depth + 1, p.right));
  }
}

template <class F>
auto integrate_segment(F&& f, cplx z0, cplx z1, const QuadratureConfig& cfg = {}) {
  return integrate_segment_detailed(std::forward<F>(f), z0, z1, cfg).value;
}

/// F(z) with F(0) = 0, integrated along the radial segment [0, z].
template <class F>
auto antiderivative(F&& fprime, cplx z, const QuadratureConfig& cfg = {}) {
  return integrate_segment(std::forward<F>(fprime), cplx{}, z, cfg);
}

}  // namespace hshear
