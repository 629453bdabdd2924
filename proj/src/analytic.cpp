#include "hshear/analytic.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace hshear {

cplx unimodular(cplx x, const std::string& what) {
  const double m = std::abs(x);
  if (!std::isfinite(m) || std::abs(m - 1.0) > kUnimodularSlack) {
    throw DomainError(what + " must have modulus 1");
  }
  return x / m;
}

AnalyticFunction::AnalyticFunction(std::string label, ValueFn value, DerivFn derivs,
                                   bool closed_form)
    : label_(std::move(label)),
      value_(std::make_shared<const ValueFn>(std::move(value))),
      derivs_(std::make_shared<const DerivFn>(std::move(derivs))),
      closed_form_(closed_form) {}

Jet AnalyticFunction::eval(cplx z) const {
  const Derivatives d = derivatives(z);
  return {value(z), d.d1, d.d2};
}

AnalyticFunction operator+(const AnalyticFunction& a, const AnalyticFunction& b) {
  return AnalyticFunction(
      "(" + a.label() + " + " + b.label() + ")", [a, b](cplx z) { return a(z) + b(z); },
      [a, b](cplx z) {
        const Derivatives da = a.derivatives(z), db = b.derivatives(z);
        return Derivatives{da.d1 + db.d1, da.d2 + db.d2};
      },
      a.closed_form() && b.closed_form());
}

AnalyticFunction operator*(cplx c, const AnalyticFunction& a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%.6g%+.6gi)*", c.real(), c.imag());
  return AnalyticFunction(
      buf + a.label(), [c, a](cplx z) { return c * a(z); },
      [c, a](cplx z) {
        const Derivatives d = a.derivatives(z);
        return Derivatives{c * d.d1, c * d.d2};
      },
      a.closed_form());
}

AnalyticFunction operator-(const AnalyticFunction& a, const AnalyticFunction& b) {
  return AnalyticFunction(
      "(" + a.label() + " - " + b.label() + ")", [a, b](cplx z) { return a(z) - b(z); },
      [a, b](cplx z) {
        const Derivatives da = a.derivatives(z), db = b.derivatives(z);
        return Derivatives{da.d1 - db.d1, da.d2 - db.d2};
      },
      a.closed_form() && b.closed_form());
}

AnalyticFunction remove_constant(const AnalyticFunction& a) {
  const cplx a0 = a(0.0);
  if (a0 == cplx{}) return a;
  return AnalyticFunction(
      a.label(), [a, a0](cplx z) { return a(z) - a0; },
      [a](cplx z) { return a.derivatives(z); }, a.closed_form());
}

AnalyticFunction scale_compose(const AnalyticFunction& a, cplx outer, cplx inner) {
  return AnalyticFunction(
      a.label(), [=](cplx z) { return outer * a(inner * z); },
      [=](cplx z) {
        const Derivatives d = a.derivatives(inner * z);
        return Derivatives{outer * inner * d.d1, outer * inner * inner * d.d2};
      },
      a.closed_form());
}

AnalyticFunction rotate_analytic(const AnalyticFunction& phi, cplx xi) {
  xi = unimodular(xi, "rotation xi");
  if (xi == cplx{1.0, 0.0}) return phi;
  AnalyticFunction r = scale_compose(phi, std::conj(xi), xi);
  char buf[64];
  std::snprintf(buf, sizeof buf, "rot(%.6g)", std::arg(xi));
  return AnalyticFunction(
      phi.label() + "@" + buf, [r](cplx z) { return r(z); },
      [r](cplx z) { return r.derivatives(z); }, r.closed_form());
}

AnalyticFunction integrate_derivative(std::string label, AnalyticFunction::DerivFn derivs,
                                      const QuadratureConfig& cfg) {
  cfg.validate();
  auto d = std::make_shared<const AnalyticFunction::DerivFn>(std::move(derivs));
  return AnalyticFunction(
      std::move(label),
      [d, cfg](cplx z) { return antiderivative([&d](cplx w) { return (*d)(w).d1; }, z, cfg); },
      [d](cplx z) { return (*d)(z); }, false);
}

AnalyticFunction zero_function() {
  return AnalyticFunction(
      "0", [](cplx) { return cplx{}; }, [](cplx) { return Derivatives{}; });
}

namespace {

AnalyticFunction mobius(std::string label, cplx c) {
  return AnalyticFunction(
      std::move(label), [c](cplx z) { return z / (1.0 - c * z); },
      [c](cplx z) {
        const cplx q = 1.0 / (1.0 - c * z);
        return Derivatives{q * q, 2.0 * c * q * q * q};
      });
}

struct CatalogBuilder {
  AnalyticFunction operator()(catalog_id::H) const { return mobius("H", 1.0); }
  AnalyticFunction operator()(catalog_id::HRotMinus1) const { return mobius("H_ROT_MINUS1", -1.0); }
  AnalyticFunction operator()(catalog_id::MobiusHalfplane m) const {
    const cplx c = unimodular(m.c, "Mobius parameter c");
    return mobius(to_string(catalog_id::MobiusHalfplane{c}), c);
  }

  AnalyticFunction operator()(catalog_id::LLambda l) const {
    const cplx lam = unimodular(l.lambda, "L_lambda parameter");
    if (std::abs(lam - 1.0) <= kLambdaExclusion || std::abs(lam + 1.0) <= kLambdaExclusion) {
      throw DomainError("L_lambda requires lambda not in {-1, 1}");
    }
    const cplx lbar = std::conj(lam);
    const cplx k = 1.0 / (2.0 * kI * lam.imag());
    return AnalyticFunction(
        to_string(catalog_id::LLambda{lam}),
        [=](cplx z) { return k * std::log((1.0 - lbar * z) / (1.0 - lam * z)); },
        [=](cplx z) {
          const cplx p = 1.0 / ((1.0 - lam * z) * (1.0 - lbar * z));
          return Derivatives{p, (2.0 * lam.real() - 2.0 * z) * p * p};
        });
  }

  AnalyticFunction operator()(catalog_id::Koebe) const {
    return AnalyticFunction(
        "koebe",
        [](cplx z) {
          const cplx q = 1.0 / (1.0 - z);
          return z * q * q;
        },
        [](cplx z) {
          const cplx q = 1.0 / (1.0 - z);
          const cplx q3 = q * q * q;
          return Derivatives{(1.0 + z) * q3, (4.0 + 2.0 * z) * q3 * q};
        });
  }

  AnalyticFunction operator()(catalog_id::Identity) const {
    return AnalyticFunction(
        "identity", [](cplx z) { return z; }, [](cplx) { return Derivatives{1.0, 0.0}; });
  }

  // h0 = (2z - z^2) / (2(1-z)^2), h0' = 1/(1-z)^3.
  AnalyticFunction operator()(catalog_id::F0HPart) const {
    return AnalyticFunction(
        "f0h",
        [](cplx z) {
          const cplx q = 1.0 / (1.0 - z);
          return (2.0 * z - z * z) * q * q / 2.0;
        },
        [](cplx z) {
          const cplx q = 1.0 / (1.0 - z);
          const cplx q3 = q * q * q;
          return Derivatives{q3, 3.0 * q3 * q};
        });
  }

  // g0 = z^2 / (2(1-z)^2), g0' = z/(1-z)^3.
  AnalyticFunction operator()(catalog_id::F0GPart) const {
    return AnalyticFunction(
        "f0g",
        [](cplx z) {
          const cplx q = 1.0 / (1.0 - z);
          return z * z * q * q / 2.0;
        },
        [](cplx z) {
          const cplx q = 1.0 / (1.0 - z);
          const cplx q3 = q * q * q;
          return Derivatives{z * q3, (1.0 + 2.0 * z) * q3 * q};
        });
  }
};

std::string fmt_num(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

AnalyticFunction catalog(const CatalogId& id) { return std::visit(CatalogBuilder{}, id); }

std::string to_string(const CatalogId& id) {
  struct {
    std::string operator()(catalog_id::H) const { return "H"; }
    std::string operator()(catalog_id::HRotMinus1) const { return "H_ROT_MINUS1"; }
    std::string operator()(catalog_id::LLambda l) const {
      return "Llambda:re=" + fmt_num(l.lambda.real()) + ",im=" + fmt_num(l.lambda.imag());
    }
    std::string operator()(catalog_id::Koebe) const { return "koebe"; }
    std::string operator()(catalog_id::MobiusHalfplane m) const {
      return "mobius:re=" + fmt_num(m.c.real()) + ",im=" + fmt_num(m.c.imag());
    }
    std::string operator()(catalog_id::Identity) const { return "identity"; }
    std::string operator()(catalog_id::F0HPart) const { return "f0h"; }
    std::string operator()(catalog_id::F0GPart) const { return "f0g"; }
  } v;
  return std::visit(v, id);
}

}  // namespace hshear
