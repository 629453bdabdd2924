#pragma once

#include <Eigen/Core>

#include <memory>
#include <optional>
#include <utility>

#include "hshear/analytic.hpp"
#include "hshear/quadrature.hpp"
#include "hshear/schwarz.hpp"

namespace hshear {

/// h - eta g = phi, g'/h' = omega, h(0) = g(0) = 0.
struct ShearSystem {
  AnalyticFunction phi;
  SchwarzFunction omega;
  /// e^{2 i theta}; -1 is the vertical shear.
  cplx eta{-1.0, 0.0};
};

/// The direction parameter for a shear in the theta direction.
inline cplx eta_from_theta(double theta) { return polar1(2.0 * theta); }

/// Checks |eta| = 1 (renormalizing float noise) and phi(0) = 0, phi'(0) = 1.
ShearSystem make_shear_system(AnalyticFunction phi, SchwarzFunction omega, cplx eta);

using Vector2c = Eigen::Matrix<cplx, 2, 1>;

struct HarmonicDerivatives {
  cplx dh, dg, d2h, d2g;
};

/// f = h + conj(g).
///
/// Evaluation is pure; quadrature-backed maps memoize (h, g) values per point
/// behind a lock, so concurrent callers see the same numbers as serial ones.
class HarmonicMap {
 public:
  using PartsFn = std::function<Vector2c(cplx)>;
  using DerivsFn = std::function<HarmonicDerivatives(cplx)>;

  HarmonicMap(AnalyticFunction h, AnalyticFunction g,
              std::optional<ShearSystem> provenance = std::nullopt);
  HarmonicMap(AnalyticFunction h, AnalyticFunction g, PartsFn parts, DerivsFn derivs,
              std::optional<ShearSystem> provenance = std::nullopt,
              QuadratureConfig cfg = {});

  /// phi viewed as a harmonic map with g = 0.
  static HarmonicMap from_analytic(AnalyticFunction phi);

  cplx operator()(cplx z) const;
  /// (h(z), g(z)).
  Vector2c parts(cplx z) const { return (*parts_)(z); }
  HarmonicDerivatives derivatives(cplx z) const { return (*derivs_)(z); }
  /// (h(z1) - h(z0), g(z1) - g(z0)) by quadrature of (h', g') along the chord.
  Vector2c increment(cplx z0, cplx z1) const;

  const AnalyticFunction& h() const { return h_; }
  const AnalyticFunction& g() const { return g_; }
  const std::optional<ShearSystem>& provenance() const { return provenance_; }
  const QuadratureConfig& quadrature() const { return cfg_; }
  bool closed_form() const { return h_.closed_form() && g_.closed_form(); }

 private:
  AnalyticFunction h_, g_;
  std::shared_ptr<const PartsFn> parts_;
  std::shared_ptr<const DerivsFn> derivs_;
  std::optional<ShearSystem> provenance_;
  QuadratureConfig cfg_;
};

/// Solves the shear system: h' = phi' / (1 - eta omega), g' = omega h',
/// with h and g recovered by radial quadrature.
HarmonicMap shear_construct(const ShearSystem& sys, const QuadratureConfig& cfg = {});

/// f_xi(z) = conj(xi) f(xi z), with parts conj(xi) h(xi z) and xi g(xi z).
/// A shear (phi, omega, eta) becomes the shear
/// (phi_xi, xi^2 omega(xi z), eta conj(xi)^2).
HarmonicMap rotate_harmonic(const HarmonicMap& f, cplx xi);

/// Brings f into S_H^0: F = (f - f(0)) / h'(0) followed by
/// tau(w) = (w - conj(a) conj(w)) / (1 - |a|^2), a = g'(0) / conj(h'(0)).
HarmonicMap normalize(const HarmonicMap& f);

/// h - e^{2it} g.
AnalyticFunction analytic_combination(const HarmonicMap& f, double t);

}  // namespace hshear
