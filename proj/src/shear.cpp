#include "hshear/shear.hpp"

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace hshear {

ShearSystem make_shear_system(AnalyticFunction phi, SchwarzFunction omega, cplx eta) {
  eta = unimodular(eta, "shear direction eta");
  const Jet j0 = phi.eval(0.0);
  if (std::abs(j0.value) > 1e-10 || std::abs(j0.d1 - 1.0) > 1e-10) {
    throw DomainError("shear datum must satisfy phi(0) = 0 and phi'(0) = 1");
  }
  return ShearSystem{std::move(phi), std::move(omega), eta};
}

HarmonicMap::HarmonicMap(AnalyticFunction h, AnalyticFunction g,
                         std::optional<ShearSystem> provenance)
    : HarmonicMap(
          h, g, [h, g](cplx z) { return Vector2c(h(z), g(z)); },
          [h, g](cplx z) {
            const Derivatives dh = h.derivatives(z), dg = g.derivatives(z);
            return HarmonicDerivatives{dh.d1, dg.d1, dh.d2, dg.d2};
          },
          std::move(provenance)) {}

HarmonicMap::HarmonicMap(AnalyticFunction h, AnalyticFunction g, PartsFn parts, DerivsFn derivs,
                         std::optional<ShearSystem> provenance, QuadratureConfig cfg)
    : h_(std::move(h)),
      g_(std::move(g)),
      parts_(std::make_shared<const PartsFn>(std::move(parts))),
      derivs_(std::make_shared<const DerivsFn>(std::move(derivs))),
      provenance_(std::move(provenance)),
      cfg_(cfg) {}

HarmonicMap HarmonicMap::from_analytic(AnalyticFunction phi) {
  return HarmonicMap(std::move(phi), zero_function());
}

cplx HarmonicMap::operator()(cplx z) const {
  const Vector2c p = parts(z);
  return p(0) + std::conj(p(1));
}

Vector2c HarmonicMap::increment(cplx z0, cplx z1) const {
  const auto& d = *derivs_;
  return integrate_segment(
      [&d](cplx w) {
        const HarmonicDerivatives hd = d(w);
        return Vector2c(hd.dh, hd.dg);
      },
      z0, z1, cfg_);
}

namespace {

// Memo of radial-quadrature values keyed by the bit pattern of z.
class PartsCache {
 public:
  template <class Compute>
  Vector2c get(cplx z, Compute&& compute) {
    const Key k{std::bit_cast<std::uint64_t>(z.real()), std::bit_cast<std::uint64_t>(z.imag())};
    {
      std::shared_lock lock(mu_);
      if (auto it = map_.find(k); it != map_.end()) return it->second;
    }
    const Vector2c v = compute(z);
    std::unique_lock lock(mu_);
    if (map_.size() >= kCapacity) map_.clear();
    map_.emplace(k, v);
    return v;
  }

 private:
  static constexpr std::size_t kCapacity = 1 << 16;
  struct Key {
    std::uint64_t re, im;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return std::hash<std::uint64_t>{}(k.re * 0x9E3779B97F4A7C15ull ^ k.im);
    }
  };
  std::shared_mutex mu_;
  std::unordered_map<Key, Vector2c, KeyHash> map_;
};

std::string fmt_cplx(cplx c) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g%+.6gi", c.real(), c.imag());
  return buf;
}

}  // namespace

HarmonicMap shear_construct(const ShearSystem& sys_in, const QuadratureConfig& cfg) {
  cfg.validate();
  const ShearSystem sys = make_shear_system(sys_in.phi, sys_in.omega, sys_in.eta);
  const AnalyticFunction phi = sys.phi;
  const SchwarzFunction omega = sys.omega;
  const cplx eta = sys.eta;

  // h'' = (phi'' (1 - eta w) + eta w' phi') / (1 - eta w)^2, g'' = w' h' + w h''.
  auto derivs = [phi, omega, eta](cplx z) {
    const Derivatives p = phi.derivatives(z);
    const SchwarzJet w = omega.eval(z);
    const cplx inv = 1.0 / (1.0 - eta * w.value);
    const cplx dh = p.d1 * inv;
    const cplx d2h = (p.d2 + eta * w.d1 * dh) * inv;
    return HarmonicDerivatives{dh, w.value * dh, d2h, w.d1 * dh + w.value * d2h};
  };
  auto cache = std::make_shared<PartsCache>();
  auto parts = [derivs, cache, cfg](cplx z) {
    return cache->get(z, [&](cplx w) {
      return antiderivative(
          [&](cplx s) {
            const HarmonicDerivatives d = derivs(s);
            return Vector2c(d.dh, d.dg);
          },
          w, cfg);
    });
  };

  const std::string tag =
      "shear[" + phi.label() + "; " + omega.label() + "; eta=" + fmt_cplx(eta) + "]";
  AnalyticFunction h(
      tag + ".h", [parts](cplx z) { return parts(z)(0); },
      [derivs](cplx z) {
        const HarmonicDerivatives d = derivs(z);
        return Derivatives{d.dh, d.d2h};
      },
      false);
  AnalyticFunction g(
      tag + ".g", [parts](cplx z) { return parts(z)(1); },
      [derivs](cplx z) {
        const HarmonicDerivatives d = derivs(z);
        return Derivatives{d.dg, d.d2g};
      },
      false);
  return HarmonicMap(std::move(h), std::move(g), parts, derivs, sys, cfg);
}

HarmonicMap rotate_harmonic(const HarmonicMap& f, cplx xi) {
  xi = unimodular(xi, "rotation xi");
  const cplx xb = std::conj(xi);
  AnalyticFunction h = scale_compose(f.h(), xb, xi);
  AnalyticFunction g = scale_compose(f.g(), xi, xi);
  std::optional<ShearSystem> prov;
  if (f.provenance()) {
    const ShearSystem& s = *f.provenance();
    prov = ShearSystem{rotate_analytic(s.phi, xi), rotate_schwarz(s.omega, xi), s.eta * xb * xb};
  }
  return HarmonicMap(
      std::move(h), std::move(g),
      [f, xi, xb](cplx z) {
        const Vector2c p = f.parts(xi * z);
        return Vector2c(xb * p(0), xi * p(1));
      },
      [f, xi](cplx z) {
        const HarmonicDerivatives d = f.derivatives(xi * z);
        const cplx x2 = xi * xi;
        return HarmonicDerivatives{d.dh, x2 * d.dg, xi * d.d2h, x2 * xi * d.d2g};
      },
      std::move(prov), f.quadrature());
}

HarmonicMap normalize(const HarmonicMap& f) {
  const Vector2c p0 = f.parts(0.0);
  const HarmonicDerivatives d0 = f.derivatives(0.0);
  const cplx b = d0.dh;
  if (b == cplx{}) throw DomainError("normalize requires h'(0) != 0");
  const cplx a = d0.dg / std::conj(b);
  const double det = 1.0 - std::norm(a);
  if (!(det > 0.0)) throw DomainError("normalize requires |g'(0)/conj(h'(0))| < 1");

  // [H; G] = M [h - h(0); g - g(0)].
  Eigen::Matrix2cd m;
  m << 1.0 / b, -std::conj(a) / std::conj(b), -a / b, 1.0 / std::conj(b);
  m /= det;

  AnalyticFunction h = remove_constant(m(0, 0) * f.h() + m(0, 1) * f.g());
  AnalyticFunction g = remove_constant(m(1, 0) * f.h() + m(1, 1) * f.g());
  return HarmonicMap(
      std::move(h), std::move(g),
      [f, m, p0](cplx z) -> Vector2c { return m * (f.parts(z) - p0); },
      [f, m](cplx z) {
        const HarmonicDerivatives d = f.derivatives(z);
        const Vector2c d1 = m * Vector2c(d.dh, d.dg);
        const Vector2c d2 = m * Vector2c(d.d2h, d.d2g);
        return HarmonicDerivatives{d1(0), d1(1), d2(0), d2(1)};
      },
      std::nullopt, f.quadrature());
}

AnalyticFunction analytic_combination(const HarmonicMap& f, double t) {
  const cplx e = polar1(2.0 * t);
  const HarmonicMap copy = f;
  return AnalyticFunction(
      f.h().label() + " - e^{2it} " + f.g().label(),
      [copy, e](cplx z) {
        const Vector2c p = copy.parts(z);
        return p(0) - e * p(1);
      },
      [copy, e](cplx z) {
        const HarmonicDerivatives d = copy.derivatives(z);
        return Derivatives{d.dh - e * d.dg, d.d2h - e * d.d2g};
      },
      f.closed_form());
}

}  // namespace hshear
