#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "hshear/types.hpp"

namespace hshear {

struct SchwarzJet {
  cplx value;
  cplx d1;
};

namespace schwarz_spec {
struct Zero {};
/// lambda z^N.
struct Monomial {
  cplx lambda{1.0, 0.0};
  int power = 1;
};
/// scale * z * e^{i gamma} * prod (a_k - z) / (1 - conj(a_k) z).
struct Blaschke {
  std::vector<cplx> zeros;
  double gamma = 0.0;
  cplx scale{1.0, 0.0};
};
}  // namespace schwarz_spec

using SchwarzSpec = std::variant<schwarz_spec::Zero, schwarz_spec::Monomial, schwarz_spec::Blaschke>;

inline constexpr double kMaxBlaschkeZero = 0.95;

/// Analytic self-map of the disk fixing the origin.
class SchwarzFunction {
 public:
  SchwarzJet eval(cplx z) const;
  cplx operator()(cplx z) const { return eval(z).value; }

  const SchwarzSpec& spec() const { return spec_; }
  const std::string& label() const { return label_; }

 private:
  friend SchwarzFunction make_schwarz(const SchwarzSpec&, std::string);
  SchwarzSpec spec_;
  std::string label_;
};

/// Validates the spec and builds the function. An empty label is replaced by
/// the canonical text form of the spec.
SchwarzFunction make_schwarz(const SchwarzSpec& spec, std::string label = {});

/// Random Blaschke dilatation of total degree `degree` (the pinned factor z
/// plus degree-1 zeros drawn uniformly in |a| <= 0.95, with uniform phase).
/// Deterministic in `seed`.
SchwarzFunction random_blaschke(std::uint64_t seed, int degree, double scale);

/// z -> xi^2 * omega(xi z): the dilatation of the rotation of a harmonic map.
SchwarzFunction rotate_schwarz(const SchwarzFunction& omega, cplx xi);
/// -omega.
SchwarzFunction negate_schwarz(const SchwarzFunction& omega);

std::string to_string(const SchwarzSpec& spec);

}  // namespace hshear
