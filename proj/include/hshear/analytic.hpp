#pragma once

#include <functional>
#include <memory>
#include <string>
#include <variant>

#include "hshear/quadrature.hpp"
#include "hshear/types.hpp"

namespace hshear {

/// Value with first and second derivative at a point.
struct Jet {
  cplx value;
  cplx d1;
  cplx d2;
};

struct Derivatives {
  cplx d1;
  cplx d2;
};

/// An analytic function on the unit disk, evaluable together with its first
/// two derivatives.
///
/// Values and derivatives are held as separate callables: derivatives are
/// always closed form, while values may be backed by path quadrature (shear
/// parts, Brannan transforms). Copies share the underlying callables and
/// are cheap; instances are immutable.
class AnalyticFunction {
 public:
  using ValueFn = std::function<cplx(cplx)>;
  using DerivFn = std::function<Derivatives(cplx)>;

  AnalyticFunction(std::string label, ValueFn value, DerivFn derivs, bool closed_form = true);

  cplx value(cplx z) const { return (*value_)(z); }
  cplx operator()(cplx z) const { return value(z); }
  Derivatives derivatives(cplx z) const { return (*derivs_)(z); }
  cplx d1(cplx z) const { return derivatives(z).d1; }
  Jet eval(cplx z) const;

  const std::string& label() const { return label_; }
  /// False when value() runs a quadrature.
  bool closed_form() const { return closed_form_; }

 private:
  std::string label_;
  std::shared_ptr<const ValueFn> value_;
  std::shared_ptr<const DerivFn> derivs_;
  bool closed_form_;
};

AnalyticFunction operator+(const AnalyticFunction& a, const AnalyticFunction& b);
AnalyticFunction operator-(const AnalyticFunction& a, const AnalyticFunction& b);
AnalyticFunction operator*(cplx c, const AnalyticFunction& a);
/// a - a(0).
AnalyticFunction remove_constant(const AnalyticFunction& a);
/// z -> outer * a(inner * z).
AnalyticFunction scale_compose(const AnalyticFunction& a, cplx outer, cplx inner);

/// The rotation conj(xi) * phi(xi z).
AnalyticFunction rotate_analytic(const AnalyticFunction& phi, cplx xi);

/// Function with F(0) = 0 whose derivatives are `derivs`; values come from
/// radial quadrature of the first derivative.
AnalyticFunction integrate_derivative(std::string label, AnalyticFunction::DerivFn derivs,
                                      const QuadratureConfig& cfg = {});

AnalyticFunction zero_function();

namespace catalog_id {
struct H {};
struct HRotMinus1 {};
struct LLambda {
  cplx lambda;
};
struct Koebe {};
struct MobiusHalfplane {
  cplx c;
};
struct Identity {};
struct F0HPart {};
struct F0GPart {};
}  // namespace catalog_id

using CatalogId =
    std::variant<catalog_id::H, catalog_id::HRotMinus1, catalog_id::LLambda, catalog_id::Koebe,
                 catalog_id::MobiusHalfplane, catalog_id::Identity, catalog_id::F0HPart,
                 catalog_id::F0GPart>;

/// Exclusion radius around lambda = +-1 for L_lambda.
inline constexpr double kLambdaExclusion = 1e-9;

/// Closed-form catalog entry with exact derivatives.
AnalyticFunction catalog(const CatalogId& id);

/// Canonical text form, e.g. "H" or "Llambda:re=0,im=1".
std::string to_string(const CatalogId& id);

}  // namespace hshear
