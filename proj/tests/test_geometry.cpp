#include <doctest.h>

#include <random>

#include "hshear/geometry.hpp"
#include "hshear/probe.hpp"
#include "hshear/text_forms.hpp"
#include "support.hpp"

using namespace hshear;

namespace {

HarmonicMap analytic(const char* spec) { return HarmonicMap::from_analytic(parse_phi(spec)); }

HarmonicMap parabola_map() {
  return shear_construct(make_shear_system(parse_phi("H"), parse_omega("monomial:N=1"), 1.0));
}

// Curve carrying only turning increments.
BoundaryCurve from_turning(const std::vector<double>& d) {
  BoundaryCurve c;
  const Eigen::Index n = static_cast<Eigen::Index>(d.size());
  c.theta = Eigen::ArrayXd::LinSpaced(n, 0.0, 2.0 * kPi * (n - 1) / n);
  c.turning = Eigen::Map<const Eigen::ArrayXd>(d.data(), n);
  return c;
}

double brute_backturn(const std::vector<double>& d) {
  const std::size_t n = d.size();
  double worst = 0.0;
  for (std::size_t b = 0; b < n; ++b) {
    double s = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
      s += d[(b + l) % n];
      worst = std::min(worst, s);
    }
  }
  return -worst;
}

}  // namespace

TEST_CASE("koebe subdisks: convex below the radius of convexity only") {
  const HarmonicMap k = analytic("koebe");
  const BoundaryCurve small = sample_boundary(k, 0.2);
  const ConvexityReport a = convexity_check(small);
  CHECK(a.verdict == Verdict::Convex);
  CHECK(std::abs(a.total_turning - 2.0 * kPi) <= 1e-3);

  const BoundaryCurve big = sample_boundary(k, 0.5);
  const ConvexityReport b = convexity_check(big);
  CHECK(b.verdict == Verdict::NonConvex);
  REQUIRE(b.witness);
  // The concave arc is centred at theta = pi.
  const double mid = 0.5 * (b.witness->theta_begin + b.witness->theta_end);
  CHECK(std::abs(std::remainder(mid - kPi, 2.0 * kPi)) < 0.05);
  REQUIRE(b.midpoint);
  CHECK(winding_number(big, b.midpoint->midpoint) == 0);
  CHECK(winding_number(big, b.midpoint->a * 0.0) == 1);

  // 2 - sqrt(3) is the radius of convexity of the Koebe function.
  const double rc = 2.0 - std::sqrt(3.0);
  CHECK(convexity_check(sample_boundary(k, rc - 0.01)).verdict == Verdict::Convex);
  CHECK(convexity_check(sample_boundary(k, rc + 0.01)).verdict == Verdict::NonConvex);
}

TEST_CASE("turning-only curves give the same verdict without a midpoint witness") {
  const HarmonicMap k = analytic("koebe");
  const ConvexityReport a = convexity_check(sample_boundary(k, 0.5));
  const ConvexityReport b = convexity_check(sample_turning(k, 0.5));
  CHECK(a.verdict == b.verdict);
  CHECK(a.worst_backturn == doctest::Approx(b.worst_backturn).epsilon(1e-14));
  CHECK_FALSE(b.midpoint);
}

TEST_CASE("cyclic back-turn matches brute force") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> nd(0.05, 0.2);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> d(3 + trial % 40);
    for (double& x : d) x = nd(rng);
    const ConvexityReport rep = convexity_check(from_turning(d));
    CHECK(rep.worst_backturn == doctest::Approx(brute_backturn(d)).epsilon(1e-12));
    if (rep.witness) {
      double s = 0.0;
      for (Eigen::Index l = 0; l < rep.witness->length; ++l) {
        s += d[(rep.witness->begin + l) % d.size()];
      }
      CHECK(-s == doctest::Approx(rep.worst_backturn).epsilon(1e-12));
    }
  }
}

TEST_CASE("verdict thresholds") {
  const int n = 100;
  std::vector<double> d(n, 2.0 * kPi / n);
  CHECK(convexity_check(from_turning(d)).verdict == Verdict::Convex);
  // A full turn is required.
  std::vector<double> twice(n, 4.0 * kPi / n);
  CHECK(convexity_check(from_turning(twice)).verdict == Verdict::Inconclusive);
  // Back-turn between tol and 10 tol.
  std::vector<double> e = d;
  e[3] = -5e-6;
  e[4] += 5e-6 + 2.0 * kPi / n;
  CHECK(convexity_check(from_turning(e)).verdict == Verdict::Inconclusive);
  e[3] = -2e-5;
  e[4] = 2e-5 + 4.0 * kPi / n;
  CHECK(convexity_check(from_turning(e)).verdict == Verdict::NonConvex);
  CHECK(convexity_check(from_turning(e), 1e-4).verdict == Verdict::Convex);
}

TEST_CASE("winding numbers") {
  const BoundaryCurve c = sample_boundary(analytic("identity"), 0.5, 256);
  CHECK(winding_number(c, 0.0) == 1);
  CHECK(winding_number(c, cplx(0.49, 0.0)) == 1);
  CHECK(winding_number(c, cplx(0.51, 0.0)) == 0);
  CHECK(winding_number(c, cplx(3.0, -2.0)) == 0);
}

TEST_CASE("tangents agree with finite differences of the curve") {
  const HarmonicMap f = parabola_map();
  for (const double r : {0.3, 0.6, 0.9}) {
    const int n = 512;
    const BoundaryCurve c = sample_boundary(f, r, n);
    const double h = 1e-4;
    for (int j = 0; j < n; j += 37) {
      const double th = c.theta(j);
      auto at = [&](double t) { return f(std::polar(r, t)); };
      const cplx fd = (-at(th + 2 * h) + 8.0 * at(th + h) - 8.0 * at(th - h) + at(th - 2 * h)) / (12.0 * h);
      CHECK(std::abs(fd - c.tangent(j)) <= 1e-5 * std::abs(c.tangent(j)));
      CHECK(std::abs(at(th) - c.gamma(j)) <= 1e-12 * (1.0 + std::abs(c.gamma(j))));
    }
    // Increments are the change of arg(tangent) for slowly turning curves.
    for (int j = 0; j < n; j += 53) {
      const double da = std::arg(c.tangent((j + 1) % n) / c.tangent(j));
      CHECK(std::abs(da - c.turning(j)) <= 1e-9);
    }
  }
}

TEST_CASE("parabola residual shrinks towards the boundary") {
  const HarmonicMap f = parabola_map();
  const double r1 = parabola_residual(sample_boundary(f, 0.99, 4096));
  const double r2 = parabola_residual(sample_boundary(f, 0.999, 4096));
  const double r3 = parabola_residual(sample_boundary(f, 0.9999, 4096));
  CHECK(r1 > r2);
  CHECK(r2 > r3);
  CHECK(r3 <= 5e-3);
}

TEST_CASE("convex curves are convex in every direction") {
  for (const char* spec : {"H", "Llambda:re=0,im=1", "koebe"}) {
    const double r = std::string(spec) == "koebe" ? 0.2 : 0.95;
    const BoundaryCurve c = sample_boundary(analytic(spec), r);
    REQUIRE(convexity_check(c).verdict == Verdict::Convex);
    for (const double t : direction_grid(64)) CHECK(directional_convexity_check(c, t).pass);
  }
  // An ellipse from a harmonic map with a linear co-analytic part.
  const HarmonicMap e(parse_phi("identity"), 0.5 * parse_phi("identity"));
  const BoundaryCurve c = sample_boundary(e, 0.9, 1024);
  CHECK(convexity_check(c).verdict == Verdict::Convex);
  CHECK(winding_number(c, 0.0) == 1);
}

TEST_CASE("koebe is convex only in the horizontal direction") {
  const BoundaryCurve c = sample_boundary(analytic("koebe"), 0.999);
  const std::vector<double> grid = direction_grid(64);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const DirectionalReport d = directional_convexity_check(c, grid[k]);
    CAPTURE(grid[k]);
    CHECK(d.pass == (k == 0));
    if (!d.pass) CHECK(d.sign_changes > 2);
  }
}

TEST_CASE("rotation equivariance of the verdict") {
  const HarmonicMap f = parabola_map();
  const int n = 2048;
  for (const int shift : {1, 300, 1024}) {
    const cplx xi = polar1(2.0 * kPi * shift / n);
    const BoundaryCurve a = sample_turning(f, 0.9, n);
    const BoundaryCurve b = sample_turning(rotate_harmonic(f, xi), 0.9, n);
    const ConvexityReport ra = convexity_check(a), rb = convexity_check(b);
    CHECK(ra.verdict == rb.verdict);
    CHECK(ra.worst_backturn == doctest::Approx(rb.worst_backturn).epsilon(1e-9));
    CHECK(ra.total_turning == doctest::Approx(rb.total_turning).epsilon(1e-9));
    for (int j = 0; j < n; j += 97) {
      CHECK(std::abs(b.turning(j) - a.turning((j + shift) % n)) <= 1e-9);
    }
  }
}

TEST_CASE("worked curves") {
  const BoundaryCurve id = sample_boundary(analytic("identity"), 0.5, 128);
  for (Eigen::Index j = 0; j < id.size(); ++j) {
    const cplx z = std::polar(0.5, id.theta(j));
    CHECK(std::abs(id.gamma(j) - z) <= 1e-15);
    CHECK(std::abs(id.tangent(j) - kI * z) <= 1e-15);
  }
  CHECK(convexity_check(sample_boundary(analytic("identity"), 0.9)).verdict == Verdict::Convex);
  // Mobius image of a circle is a circle.
  const BoundaryCurve h = sample_boundary(analytic("H"), 0.9, 512);
  const cplx centre = 0.5 * (h.gamma(0) + h.gamma(256));
  for (Eigen::Index j = 0; j < h.size(); ++j) {
    CHECK(std::abs(std::abs(h.gamma(j) - centre) - std::abs(h.gamma(0) - centre)) <= 1e-12);
  }
  CHECK(convexity_check(h).total_turning == doctest::Approx(2.0 * kPi).epsilon(1e-9));
  // On |w| = 1/2, u + v^2 + 1/4 peaks at w = 1/2.
  CHECK(parabola_residual(id) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("parabola map curve") {
  const HarmonicMap f = parabola_map();
  const BoundaryCurve c = sample_boundary(f, 0.99);
  const ConvexityReport rep = convexity_check(c);
  REQUIRE(rep.verdict == Verdict::NonConvex);
  const double mid = 0.5 * (rep.witness->theta_begin + rep.witness->theta_end);
  CHECK(std::abs(std::remainder(mid - kPi, 2.0 * kPi)) < 0.5);
  const cplx a = f(cplx(0.0, 0.98)), b = f(cplx(0.0, -0.98));
  CHECK(winding_number(c, 0.5 * (a + b)) == 0);
  CHECK(winding_number(c, 0.0) == 1);
  double mx = 0.0;
  for (Eigen::Index j = 0; j < c.size(); ++j) mx = std::max(mx, std::abs(c.gamma(j)));
  CHECK(winding_number(c, cplx(2.5 * mx, 0.1)) == 0);
  CHECK(parabola_residual(sample_boundary(f, 0.9)) > parabola_residual(sample_boundary(f, 0.999)));

  const BoundaryCurve diff = sample_boundary(HarmonicMap::from_analytic(analytic_combination(f, 0.0)), 0.999);
  CHECK(directional_convexity_check(diff, kPi / 2).pass);
  const BoundaryCurve kc = sample_boundary(analytic("koebe"), 0.999);
  CHECK(directional_convexity_check(kc, 0.0).pass);
  CHECK_FALSE(directional_convexity_check(kc, kPi / 2).pass);
}

TEST_CASE("strip with a slit is convex only horizontally") {
  const HarmonicMap f = shear_construct(
      make_shear_system(parse_phi("Llambda:re=0,im=1"), parse_omega("monomial:lam_re=-1,lam_im=0,N=1"), -1.0));
  const BoundaryCurve c = sample_boundary(HarmonicMap::from_analytic(analytic_combination(f, 0.0)), 0.999);
  CHECK(directional_convexity_check(c, 0.0).pass);
  CHECK_FALSE(directional_convexity_check(c, kPi / 2).pass);
}
