// Acceptance criteria. One PASS/FAIL line each; exit status 1 if any fails.
// Arguments: paths of the unit-test executables, timed as the property suite.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hshear/probe.hpp"
#include "hshear/text_forms.hpp"

using namespace hshear;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::vector<cplx> grid(const std::vector<double>& radii, int m) {
  std::vector<cplx> out;
  for (const double r : radii) {
    for (int k = 0; k < m; ++k) out.push_back(std::polar(r, 2.0 * kPi * (k + 0.5) / m));
  }
  return out;
}

const std::vector<double> kRadii{0.1, 0.3, 0.5, 0.7, 0.9, 0.95, 0.99};

// Closed forms of the parabola map.
cplx h0(cplx z) { return (z - z * z / 2.0) / ((1.0 - z) * (1.0 - z)); }
cplx g0(cplx z) { return (z * z / 2.0) / ((1.0 - z) * (1.0 - z)); }

// Ray-casting point-in-polygon.
bool inside(const std::vector<cplx>& poly, cplx p) {
  bool in = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const cplx a = poly[i], b = poly[j];
    if ((a.imag() > p.imag()) != (b.imag() > p.imag())) {
      const double x = a.real() + (p.imag() - a.imag()) / (b.imag() - a.imag()) * (b.real() - a.real());
      if (p.real() < x) in = !in;
    }
  }
  return in;
}

// Directions t on the k pi / 64 grid in which the closed curve w(theta) is
// convex: Im(e^{-it} w) changes monotonicity exactly twice.
template <class W>
std::vector<int> convex_directions(W w, double r, int n, int count) {
  std::vector<cplx> pts(n);
  for (int j = 0; j < n; ++j) pts[j] = w(std::polar(r, 2.0 * kPi * j / n));
  std::vector<int> out;
  for (int k = 0; k < count; ++k) {
    const cplx rot = std::polar(1.0, -kPi * k / count);
    std::vector<double> q(n);
    for (int j = 0; j < n; ++j) q[j] = (rot * pts[j]).imag();
    const double span = *std::max_element(q.begin(), q.end()) - *std::min_element(q.begin(), q.end());
    std::vector<int> signs;
    for (int j = 0; j < n; ++j) {
      const double d = q[(j + 1) % n] - q[j];
      if (std::abs(d) > 1e-9 * span) signs.push_back(d > 0 ? 1 : -1);
    }
    int changes = 0;
    for (std::size_t j = 0; j < signs.size(); ++j) changes += signs[j] != signs[(j + 1) % signs.size()];
    if (changes == 2) out.push_back(k);
  }
  return out;
}

std::string list(const std::vector<int>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

std::vector<double> g_accepted_turning;

void record_accepted(const ProbeReport& rep) {
  for (const OmegaOutcome& o : rep.outcomes) {
    for (const RadiusVerdict& v : o.verdicts) {
      if (v.verdict == Verdict::Convex) g_accepted_turning.push_back(v.total_turning);
    }
  }
}

Outcome shear_reconstruction() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  const std::vector<std::string> phis{"H", "H_ROT_MINUS1", "Llambda:re=0,im=1",
                                      "Llambda:arg=1.0471975511965976", "koebe", "identity",
                                      "mobius:re=0,im=1"};
  const std::vector<std::string> omegas = expand_family(default_family(3));
  std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
  double err = 0.0;
  for (int i = 0; i < 20; ++i) {
    const std::string phi = phis[rng() % phis.size()];
    const std::string omega = omegas[rng() % omegas.size()];
    const cplx eta = std::polar(1.0, u(rng));
    const AnalyticFunction p = parse_phi(phi);
    const HarmonicMap f = shear_construct(make_shear_system(p, parse_omega(omega), eta));
    for (const cplx z : grid(kRadii, 32)) {
      const Vector2c hg = f.parts(z);
      err = std::max(err, std::abs(hg(0) - eta * hg(1) - p(z)));
    }
  }
  const double dt = seconds_since(t0);
  return {err <= 1e-9 && dt <= 10.0,
          "max |h - eta g - phi| " + num(err) + " (limit 1e-9), " + num(dt) + " s (limit 10 s)"};
}

Outcome parabola_suite() {
  const HarmonicMap f = shear_construct(
      make_shear_system(parse_phi("H"), make_schwarz(schwarz_spec::Monomial{1.0, 1}), 1.0));
  double err = 0.0;
  for (const cplx z : grid(kRadii, 32)) {
    const Vector2c hg = f.parts(z);
    err = std::max({err, std::abs(hg(0) - h0(z)), std::abs(hg(1) - g0(z))});
  }
  const BoundaryCurve far = sample_boundary(f, 0.9999, 4096);
  const double resid = parabola_residual(far);
  // Same residual from the closed forms.
  double oracle = 0.0;
  for (int j = 0; j < 4096; ++j) {
    const cplx z = std::polar(0.9999, 2.0 * kPi * j / 4096);
    const cplx w = h0(z) + std::conj(g0(z));
    if (std::abs(w) <= kParabolaWindow) {
      oracle = std::max(oracle, std::abs(w.real() + w.imag() * w.imag() + 0.25));
    }
  }
  const BoundaryCurve c = sample_boundary(f, 0.99);
  const ConvexityReport rep = convexity_check(c);
  bool witness = false;
  if (rep.midpoint) {
    std::vector<cplx> poly(c.size());
    for (Eigen::Index j = 0; j < c.size(); ++j) {
      const cplx z = std::polar(0.99, c.theta(j));
      poly[j] = h0(z) + std::conj(g0(z));
    }
    witness = winding_number(c, rep.midpoint->midpoint) == 0 && !inside(poly, rep.midpoint->midpoint);
  }
  const bool ok = err <= 1e-10 && resid <= 5e-3 && std::abs(resid - oracle) <= 1e-6 &&
                  rep.verdict == Verdict::NonConvex && witness;
  return {ok, "closed-form error " + num(err) + " (limit 1e-10); parabola residual " + num(resid) +
                  " (oracle " + num(oracle) + ", limit 5e-3); r=0.99 " + to_string(rep.verdict) +
                  (witness ? " with exterior midpoint" : " without exterior midpoint")};
}

Outcome vertical_shear_positives() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string detail;
  for (const char* phi : {"H", "H_ROT_MINUS1", "Llambda:arg=1.5707963267948966",
                          "Llambda:arg=1.0471975511965976"}) {
    ProbeConfig cfg;
    cfg.phi_spec = phi;
    cfg.eta = -1.0;
    const ProbeReport rep = probe_admissibility(cfg);
    record_accepted(rep);
    const bool good = rep.summary == ProbeSummary::NoFailureFound && rep.outcomes.size() >= 74;
    ok = ok && good;
    double rmin = 1.0;
    for (const FailureWitness& w : rep.failures) rmin = std::min(rmin, w.r);
    detail += std::string(phi) + ": " + to_string(rep.summary) + " over " +
              std::to_string(rep.outcomes.size()) + " dilatations";
    if (!rep.failures.empty()) {
      detail += " (" + std::to_string(rep.failures.size()) + " failing, smallest witness r=" + num(rmin) + ")";
    }
    detail += "; ";
  }
  const double dt = seconds_since(t0);
  return {ok && dt <= 120.0, detail + num(dt) + " s (limit 120 s)"};
}

Outcome rotation_counterexamples() {
  const SuiteReport suite = rotated_counterexample_suite();
  std::string detail;
  for (const SuiteCase& c : suite.cases) {
    record_accepted(c.report);
    detail += c.name + ": expected " + to_string(c.expected) + ", observed " + to_string(c.report.summary);
    if (!c.report.failures.empty()) {
      double rmin = 1.0;
      for (const FailureWitness& w : c.report.failures) rmin = std::min(rmin, w.r);
      detail += " (smallest witness r=" + num(rmin) + ")";
    }
    detail += "; ";
  }
  bool ok = suite.cases.size() == 5;
  for (const SuiteCase& c : suite.cases) ok = ok && c.matches && c.report.summary == c.expected;
  return {ok && suite.all_match, detail};
}

Outcome koebe_directions() {
  const BoundaryCurve c = sample_boundary(HarmonicMap::from_analytic(parse_phi("koebe")), 0.999);
  std::vector<int> pass;
  const std::vector<double> ts = direction_grid(64);
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (directional_convexity_check(c, ts[k]).pass) pass.push_back(static_cast<int>(k));
  }
  const std::vector<int> oracle =
      convex_directions([](cplx z) { return z / ((1.0 - z) * (1.0 - z)); }, 0.999, kDefaultSamples, 64);
  return {pass == std::vector<int>{0} && oracle == pass,
          "passing k (t = k pi/64) " + list(pass) + ", closed-form oracle " + list(oracle)};
}

Outcome halfplane_strip() {
  const ImageShape h = halfplane_strip_identifier(HarmonicMap::from_analytic(parse_phi("H")));
  const ImageShape l = halfplane_strip_identifier(HarmonicMap::from_analytic(parse_phi("Llambda:re=0,im=1")));
  const auto* hp = std::get_if<HalfPlane>(&h);
  const auto* st = std::get_if<Strip>(&l);
  const bool ok = hp && st && std::abs(hp->offset + 0.5) <= 1e-3 && std::abs(hp->normal - 1.0) <= 1e-3 &&
                  std::abs(st->width_parameter() - 0.5) <= 1e-3;
  return {ok, std::string("H: ") + (hp ? "offset " + num(hp->offset) : "not a half-plane") +
                  " (target -0.5 +- 1e-3); L_i: " + (st ? "A " + num(st->width_parameter()) : "not a strip") +
                  " (target 0.5 +- 1e-3)"};
}

Outcome boundary_rotation() {
  double dev = 0.0;
  for (const char* phi : {"H", "H_ROT_MINUS1", "Llambda:re=0,im=1", "identity"}) {
    for (const double r : kDefaultLadder) {
      dev = std::max(dev, std::abs(boundary_rotation_value(parse_phi(phi), r).value_over_pi - 2.0));
    }
  }
  const AnalyticFunction psi1 = brannan_transform(parse_phi("H"), -1.0, 1);
  const AnalyticFunction psi2 = brannan_transform(parse_phi("H"), 1.0, 2);
  const MembershipResult m1 = vk_membership(psi1, 4.0), m2 = vk_membership(psi2, 6.0);
  double err = 0.0;
  for (const cplx z : grid(kRadii, 32)) err = std::max(err, std::abs(psi1(z) - z / ((1.0 - z) * (1.0 - z))));
  const bool ok = dev <= 1e-9 && m1.max_value <= 4.0 + 1e-6 && m2.max_value <= 6.0 + 1e-6 && err <= 1e-10;
  return {ok, "convex maps max |V - 2| " + num(dev) + " (limit 1e-9); psi(-1,1) max " + num(m1.max_value) +
                  " (limit 4); psi(1,2) max " + num(m2.max_value) + " (limit 6); psi(-1,1) vs koebe " +
                  num(err) + " (limit 1e-10)"};
}

Outcome strip_formula() {
  const cplx lam = kI;
  const HarmonicMap f = shear_construct(
      make_shear_system(parse_phi("Llambda:re=0,im=1"), make_schwarz(schwarz_spec::Monomial{-1.0, 1}), -1.0));
  auto strip = [lam](cplx z) {
    return (std::log(1.0 - lam * z) + std::log(1.0 - std::conj(lam) * z) - 2.0 * std::log(1.0 - z)) /
           (2.0 - 2.0 * lam.real());
  };
  double err = 0.0;
  for (const cplx z : grid(kRadii, 32)) {
    const Vector2c hg = f.parts(z);
    err = std::max(err, std::abs(hg(0) - hg(1) - strip(z)));
  }
  const BoundaryCurve c = sample_boundary(HarmonicMap::from_analytic(analytic_combination(f, 0.0)), 0.999);
  std::vector<int> pass;
  const std::vector<double> ts = direction_grid(64);
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (directional_convexity_check(c, ts[k]).pass) pass.push_back(static_cast<int>(k));
  }
  const std::vector<int> oracle = convex_directions(strip, 0.999, kDefaultSamples, 64);
  return {err <= 1e-9 && pass == std::vector<int>{0} && oracle == pass,
          "max |h - g - formula| " + num(err) + " (limit 1e-9); passing k " + list(pass) +
              ", closed-form oracle " + list(oracle)};
}

int run_exe(const std::string& path) {
  const int st = std::system((path + " >/dev/null 2>&1").c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

Outcome oracle_invariants(const std::vector<std::string>& suite) {
  // Tangents against finite differences of the map.
  double tan_err = 0.0;
  for (const char* omega : {"monomial:N=1", "blaschke:seed=5,deg=3,scale=1", "monomial:lam_arg=2,N=3"}) {
    const HarmonicMap f = shear_construct(make_shear_system(parse_phi("H"), parse_omega(omega), -1.0));
    for (const double r : {0.3, 0.6, 0.9}) {
      const BoundaryCurve c = sample_boundary(f, r, 256);
      for (Eigen::Index j = 0; j < c.size(); j += 7) {
        const double th = c.theta(j), h = 1e-4;
        auto at = [&](double t) { return f(std::polar(r, t)); };
        const cplx fd = (-at(th + 2 * h) + 8.0 * at(th + h) - 8.0 * at(th - h) + at(th - 2 * h)) / (12.0 * h);
        tan_err = std::max(tan_err, std::abs(fd - c.tangent(j)) / std::abs(c.tangent(j)));
      }
    }
  }
  // Path independence of the integrals behind h and g.
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto point = [&] { return std::polar(0.95 * std::sqrt(u(rng)), 2.0 * kPi * u(rng)); };
  double path_err = 0.0;
  const HarmonicMap f = shear_construct(
      make_shear_system(parse_phi("koebe"), parse_omega("blaschke:seed=11,deg=3,scale=1"), std::polar(1.0, 0.4)));
  auto d = [&f](cplx z) {
    const HarmonicDerivatives hd = f.derivatives(z);
    return Vector2c(hd.dh, hd.dg);
  };
  for (int i = 0; i < 50; ++i) {
    const cplx a = point(), b = point(), m = point();
    const Vector2c direct = integrate_segment(d, a, b);
    const Vector2c broken = integrate_segment(d, a, m) + integrate_segment(d, m, b);
    path_err = std::max(path_err, (direct - broken).norm());
  }
  // Total turning of every curve accepted as convex during this run.
  double turn_err = 0.0;
  for (const double t : g_accepted_turning) turn_err = std::max(turn_err, std::abs(t - 2.0 * kPi));
  // The property suite.
  const auto t0 = Clock::now();
  std::vector<std::string> red;
  for (const std::string& exe : suite) {
    if (run_exe(exe) != 0) red.push_back(exe.substr(exe.find_last_of('/') + 1));
  }
  const double dt = seconds_since(t0);
  std::string reds;
  for (const std::string& r : red) reds += " " + r;
  const bool ok = tan_err <= 1e-5 && path_err <= 1e-11 && turn_err <= 1e-3 && !suite.empty() &&
                  red.empty() && dt <= 300.0;
  return {ok, "tangent vs FD " + num(tan_err) + " rel (limit 1e-5); path independence " + num(path_err) +
                  " (limit 1e-11); turning of " + std::to_string(g_accepted_turning.size()) +
                  " accepted curves within " + num(turn_err) + " of 2 pi (limit 1e-3); property suite " +
                  std::to_string(suite.size() - red.size()) + "/" + std::to_string(suite.size()) + " green" +
                  (red.empty() ? "" : " (red:" + reds + ")") + " in " + num(dt) + " s (limit 300 s)"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::string> suite(argv + 1, argv + argc);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"shear-reconstruction", shear_reconstruction},
      {"parabola-map", parabola_suite},
      {"vertical-shear-positives", vertical_shear_positives},
      {"rotation-counterexamples", rotation_counterexamples},
      {"koebe-directions", koebe_directions},
      {"halfplane-strip-identification", halfplane_strip},
      {"boundary-rotation", boundary_rotation},
      {"strip-formula", strip_formula},
      {"oracle-invariants", [&suite] { return oracle_invariants(suite); }},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << std::endl;
  return failed ? 1 : 0;
}
