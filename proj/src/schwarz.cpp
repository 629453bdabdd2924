#include "hshear/schwarz.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <random>

namespace hshear {

namespace {

std::string num(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

struct Evaluator {
  cplx z;
  SchwarzJet operator()(const schwarz_spec::Zero&) const { return {}; }
  SchwarzJet operator()(const schwarz_spec::Monomial& m) const {
    const cplx zn1 = std::pow(z, m.power - 1);
    return {m.lambda * zn1 * z, m.lambda * static_cast<double>(m.power) * zn1};
  }
  // Product rule over the factors; avoids dividing by omega.
  SchwarzJet operator()(const schwarz_spec::Blaschke& b) const {
    cplx p = z, dp = 1.0;
    for (const cplx a : b.zeros) {
      const cplx den = 1.0 - std::conj(a) * z;
      const cplx f = (a - z) / den;
      const cplx df = (std::norm(a) - 1.0) / (den * den);
      dp = dp * f + p * df;
      p *= f;
    }
    const cplx c = b.scale * polar1(b.gamma);
    return {c * p, c * dp};
  }
};

}  // namespace

SchwarzJet SchwarzFunction::eval(cplx z) const { return std::visit(Evaluator{z}, spec_); }

SchwarzFunction make_schwarz(const SchwarzSpec& spec, std::string label) {
  SchwarzFunction out;
  if (const auto* m = std::get_if<schwarz_spec::Monomial>(&spec)) {
    if (m->power < 1) throw DomainError("monomial dilatation needs N >= 1");
    out.spec_ = schwarz_spec::Monomial{unimodular(m->lambda, "monomial lambda"), m->power};
  } else if (const auto* b = std::get_if<schwarz_spec::Blaschke>(&spec)) {
    for (const cplx a : b->zeros) {
      if (!(std::abs(a) <= kMaxBlaschkeZero)) {
        throw DomainError("Blaschke zero outside the allowed radius 0.95");
      }
    }
    if (!(std::abs(b->scale) <= 1.0)) throw DomainError("Blaschke scale must satisfy |c| <= 1");
    if (!std::isfinite(b->gamma)) throw DomainError("Blaschke phase must be finite");
    out.spec_ = *b;
  } else {
    out.spec_ = spec;
  }
  out.label_ = label.empty() ? to_string(out.spec_) : std::move(label);
  return out;
}

SchwarzFunction random_blaschke(std::uint64_t seed, int degree, double scale) {
  if (degree < 1) throw DomainError("Blaschke degree must be at least 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  schwarz_spec::Blaschke b;
  for (int k = 1; k < degree; ++k) {
    // Uniform in the disk of radius 0.95.
    const double rad = kMaxBlaschkeZero * std::sqrt(unit(rng));
    b.zeros.push_back(std::polar(rad, 2.0 * kPi * unit(rng)));
  }
  b.gamma = 2.0 * kPi * unit(rng);
  b.scale = scale;
  return make_schwarz(b, "blaschke:seed=" + std::to_string(seed) + ",deg=" +
                             std::to_string(degree) + ",scale=" + num(scale));
}

SchwarzFunction rotate_schwarz(const SchwarzFunction& omega, cplx xi) {
  xi = unimodular(xi, "rotation xi");
  struct {
    cplx xi;
    SchwarzSpec operator()(const schwarz_spec::Zero& z) const { return z; }
    SchwarzSpec operator()(const schwarz_spec::Monomial& m) const {
      return schwarz_spec::Monomial{m.lambda * std::pow(xi, m.power + 2), m.power};
    }
    // (a - xi z) = xi (conj(xi) a - z), 1 - conj(a) xi z = 1 - conj(conj(xi) a) z.
    SchwarzSpec operator()(const schwarz_spec::Blaschke& b) const {
      schwarz_spec::Blaschke r = b;
      for (cplx& a : r.zeros) a *= std::conj(xi);
      const double turn = std::arg(xi) * static_cast<double>(3 + b.zeros.size());
      r.gamma = std::remainder(b.gamma + turn, 2.0 * kPi);
      return r;
    }
  } rot{xi};
  return make_schwarz(std::visit(rot, omega.spec()));
}

SchwarzFunction negate_schwarz(const SchwarzFunction& omega) {
  struct {
    SchwarzSpec operator()(const schwarz_spec::Zero& z) const { return z; }
    SchwarzSpec operator()(const schwarz_spec::Monomial& m) const {
      return schwarz_spec::Monomial{-m.lambda, m.power};
    }
    SchwarzSpec operator()(const schwarz_spec::Blaschke& b) const {
      schwarz_spec::Blaschke r = b;
      r.gamma = std::remainder(b.gamma + kPi, 2.0 * kPi);
      return r;
    }
  } neg;
  return make_schwarz(std::visit(neg, omega.spec()));
}

std::string to_string(const SchwarzSpec& spec) {
  struct {
    std::string operator()(const schwarz_spec::Zero&) const { return "zero"; }
    std::string operator()(const schwarz_spec::Monomial& m) const {
      return "monomial:lam_re=" + num(m.lambda.real()) + ",lam_im=" + num(m.lambda.imag()) +
             ",N=" + std::to_string(m.power);
    }
    std::string operator()(const schwarz_spec::Blaschke& b) const {
      std::string s = "blaschke:zeros=";
      for (std::size_t i = 0; i < b.zeros.size(); ++i) {
        if (i) s += "/";
        s += num(b.zeros[i].real()) + ":" + num(b.zeros[i].imag());
      }
      s += ",gamma=" + num(b.gamma) + ",scale_re=" + num(b.scale.real()) +
           ",scale_im=" + num(b.scale.imag());
      return s;
    }
  } v;
  return std::visit(v, spec);
}

}  // namespace hshear
