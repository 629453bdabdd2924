#include "hshear/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace hshear {

namespace {

struct TangentSample {
  cplx tangent;
  double rate;  // d arg(tangent) / d theta
};

TangentSample tangent_at(const HarmonicMap& f, double r, double theta) {
  const cplx z = std::polar(r, theta);
  const HarmonicDerivatives d = f.derivatives(z);
  const cplx t = kI * z * d.dh - kI * std::conj(z * d.dg);
  const cplx dt = -z * (d.dh + z * d.d2h) - std::conj(z * (d.dg + z * d.d2g));
  return {t, (dt / t).imag()};
}

// Turning between two angles; bisects while the tangent could turn by more
// than a quarter turn inside the interval.
double turning_between(const HarmonicMap& f, double r, double ta, const TangentSample& a, double tb,
                       const TangentSample& b, int depth) {
  const double delta = std::arg(b.tangent / a.tangent);
  const double spread = std::max(std::abs(a.rate), std::abs(b.rate)) * (tb - ta);
  if (depth >= 30 || (std::abs(delta) <= kPi / 4 && spread <= kPi / 2)) return delta;
  const double tm = 0.5 * (ta + tb);
  const TangentSample m = tangent_at(f, r, tm);
  return turning_between(f, r, ta, a, tm, m, depth + 1) +
         turning_between(f, r, tm, m, tb, b, depth + 1);
}

constexpr Eigen::Index kAnchorStride = 64;

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Convex:
      return "CONVEX";
    case Verdict::NonConvex:
      return "NON_CONVEX";
    case Verdict::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

namespace {

BoundaryCurve sample_curve(const HarmonicMap& f, double r, int n, bool values) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("sample radius must lie in (0, 1)");
  if (n < 64) throw DomainError("sample count must be at least 64");

  BoundaryCurve c;
  c.r = r;
  c.near_boundary = r >= kNearBoundaryRadius;
  c.theta = Eigen::ArrayXd::LinSpaced(n, 0.0, 2.0 * kPi * (n - 1) / n);
  c.tangent.resize(n);
  c.turning.resize(n);

  std::vector<TangentSample> ts(n);
  for (int j = 0; j < n; ++j) {
    ts[j] = tangent_at(f, r, c.theta(j));
    c.tangent(j) = ts[j].tangent;
  }

  if (values) {
    // Quadrature-backed maps: radial anchors, then short chords between
    // neighbouring samples.
    c.gamma.resize(n);
    Vector2c p;
    for (int j = 0; j < n; ++j) {
      const cplx z = std::polar(r, c.theta(j));
      if (f.closed_form() || j % kAnchorStride == 0) {
        p = f.parts(z);
      } else {
        p += f.increment(std::polar(r, c.theta(j - 1)), z);
      }
      c.gamma(j) = p(0) + std::conj(p(1));
    }
  }

  for (int j = 0; j < n; ++j) {
    const int k = (j + 1) % n;
    const double tb = (k == 0) ? 2.0 * kPi : c.theta(k);
    c.turning(j) = turning_between(f, r, c.theta(j), ts[j], tb, ts[k], 0);
  }
  return c;
}

}  // namespace

BoundaryCurve sample_boundary(const HarmonicMap& f, double r, int n) {
  return sample_curve(f, r, n, true);
}

BoundaryCurve sample_turning(const HarmonicMap& f, double r, int n) {
  return sample_curve(f, r, n, false);
}

ConvexityReport convexity_check(const BoundaryCurve& curve, double tol_backturn) {
  const Eigen::Index n = curve.turning.size();
  ConvexityReport rep;
  rep.r = curve.r;
  if (n == 0) return rep;
  const Eigen::ArrayXd& d = curve.turning;
  rep.total_turning = d.sum();

  // Most negative sum over a cyclic window: either a linear window (Kadane)
  // or the complement of the most positive linear window.
  double min_sum = d(0), max_sum = d(0), cur_min = 0.0, cur_max = 0.0;
  Eigen::Index min_b = 0, min_e = 1, max_b = 0, max_e = 1, cmin_b = 0, cmax_b = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (cur_min > 0.0) cur_min = 0.0, cmin_b = i;
    if (cur_max < 0.0) cur_max = 0.0, cmax_b = i;
    cur_min += d(i);
    cur_max += d(i);
    if (cur_min < min_sum) min_sum = cur_min, min_b = cmin_b, min_e = i + 1;
    if (cur_max > max_sum) max_sum = cur_max, max_b = cmax_b, max_e = i + 1;
  }
  Eigen::Index wb = min_b, wl = min_e - min_b;
  double worst = min_sum;
  const double wrap = rep.total_turning - max_sum;
  if (wrap < worst && max_e - max_b < n) {
    worst = wrap;
    wb = max_e % n;
    wl = n - (max_e - max_b);
  }
  rep.worst_backturn = std::max(0.0, -worst);

  const bool full_turn = std::abs(rep.total_turning - 2.0 * kPi) <= 1e-3;
  if (rep.worst_backturn <= tol_backturn && full_turn) {
    rep.verdict = Verdict::Convex;
  } else if (rep.worst_backturn > 10.0 * tol_backturn) {
    rep.verdict = Verdict::NonConvex;
  } else {
    rep.verdict = Verdict::Inconclusive;
  }

  if (rep.worst_backturn > 0.0) {
    TurningWindow w;
    w.begin = wb;
    w.length = wl;
    w.backturn = rep.worst_backturn;
    const double step = 2.0 * kPi / static_cast<double>(n);
    w.theta_begin = curve.theta(wb);
    w.theta_end = curve.theta(wb) + step * static_cast<double>(wl);
    rep.witness = w;
  }

  if (rep.verdict == Verdict::NonConvex && curve.gamma.size() == n) {
    // Chords across the middle of a concave window leave the region.
    const Eigen::Index centre = rep.witness->begin + rep.witness->length / 2;
    for (Eigen::Index s = std::max<Eigen::Index>(rep.witness->length / 2, 1); s >= 1; s /= 2) {
      const cplx a = curve.gamma((centre - s + n) % n);
      const cplx b = curve.gamma((centre + s) % n);
      const cplx mid = 0.5 * (a + b);
      if (((curve.gamma - mid).abs() <= 1e-9).any()) continue;
      if (winding_number(curve, mid) == 0) {
        rep.midpoint = MidpointWitness{a, b, mid};
        break;
      }
    }
  }
  return rep;
}

DirectionalReport directional_convexity_check(const BoundaryCurve& curve, double t,
                                              double deadband) {
  DirectionalReport rep;
  rep.t = t;
  const Eigen::Index n = curve.size();
  if (n == 0) return rep;
  const Eigen::ArrayXd q = (polar1(-t) * curve.gamma).imag();
  const double band = deadband * (q.maxCoeff() - q.minCoeff());

  int first = 0, prev = 0, changes = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double dq = q((j + 1) % n) - q(j);
    if (std::abs(dq) < band || dq == 0.0) continue;
    const int s = dq > 0.0 ? 1 : -1;
    if (prev == 0) {
      first = s;
    } else if (s != prev) {
      ++changes;
    }
    prev = s;
  }
  if (prev != 0 && prev != first) ++changes;
  rep.sign_changes = changes;
  rep.pass = changes == 2;
  return rep;
}

int winding_number(const BoundaryCurve& curve, cplx w) {
  const Eigen::Index n = curve.size();
  if (n == 0) return 0;
  if (((curve.gamma - w).abs() <= 1e-9).any()) {
    throw DomainError("winding number undefined: point lies on the sampled curve");
  }
  double total = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    total += std::arg((curve.gamma((j + 1) % n) - w) / (curve.gamma(j) - w));
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

double parabola_residual(const BoundaryCurve& curve, double window) {
  double worst = -1.0;
  for (Eigen::Index j = 0; j < curve.size(); ++j) {
    const cplx w = curve.gamma(j);
    if (std::abs(w) > window) continue;
    worst = std::max(worst, std::abs(w.real() + w.imag() * w.imag() + 0.25));
  }
  return worst < 0.0 ? std::numeric_limits<double>::infinity() : worst;
}

}  // namespace hshear
