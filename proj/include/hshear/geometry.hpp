#pragma once

#include <Eigen/Core>

#include <optional>

#include "hshear/shear.hpp"

namespace hshear {

/// Image of the circle |z| = r under a harmonic map, sampled at n uniform
/// angles theta_j = 2 pi j / n. Indexing is cyclic.
struct BoundaryCurve {
  double r = 0.0;
  Eigen::ArrayXd theta;
  Eigen::ArrayXcd gamma;
  /// d gamma / d theta = i z h'(z) - i conj(z g'(z)). Empty for curves read
  /// back from CSV.
  Eigen::ArrayXcd tangent;
  /// Change of arg(tangent) from sample j to sample j+1 (mod n), resolved by
  /// local refinement where the tangent turns quickly.
  Eigen::ArrayXd turning;
  bool near_boundary = false;

  Eigen::Index size() const { return gamma.size(); }
};

inline constexpr int kDefaultSamples = 4096;
inline constexpr double kDefaultBackturnTol = 1e-6;
inline constexpr double kDefaultDeadband = 1e-9;

BoundaryCurve sample_boundary(const HarmonicMap& f, double r, int n = kDefaultSamples);
/// Tangents and turning only (gamma left empty); enough for convexity_check,
/// which then skips the midpoint witness search.
BoundaryCurve sample_turning(const HarmonicMap& f, double r, int n = kDefaultSamples);

enum class Verdict { Convex, NonConvex, Inconclusive };

const char* to_string(Verdict v);

/// Contiguous run of turning increments [begin, begin + length) (cyclic).
struct TurningWindow {
  Eigen::Index begin = 0;
  Eigen::Index length = 0;
  double theta_begin = 0.0;
  double theta_end = 0.0;
  double backturn = 0.0;
};

/// Two curve points whose midpoint lies outside the curve.
struct MidpointWitness {
  cplx a, b, midpoint;
};

struct ConvexityReport {
  Verdict verdict = Verdict::Inconclusive;
  double r = 0.0;
  double total_turning = 0.0;
  double worst_backturn = 0.0;
  std::optional<TurningWindow> witness;
  std::optional<MidpointWitness> midpoint;
};

/// CONVEX iff no window of consecutive increments turns back by more than
/// tol_backturn and the total is 2 pi within 1e-3; NON_CONVEX iff some window
/// turns back by more than 10 tol_backturn; INCONCLUSIVE otherwise.
ConvexityReport convexity_check(const BoundaryCurve& curve,
                                double tol_backturn = kDefaultBackturnTol);

struct DirectionalReport {
  double t = 0.0;
  bool pass = false;
  int sign_changes = 0;
};

/// Convexity in direction t: the coordinate q = Im(e^{-it} gamma) must rise
/// and fall exactly once around the curve. Differences smaller than
/// deadband * (max q - min q) are ignored.
DirectionalReport directional_convexity_check(const BoundaryCurve& curve, double t,
                                              double deadband = kDefaultDeadband);

/// Winding number of the closed sample polygon around w.
int winding_number(const BoundaryCurve& curve, cplx w);

inline constexpr double kParabolaWindow = 100.0;

/// max |Re w + (Im w)^2 + 1/4| over samples with |w| <= window.
///
/// The window excludes the arc near the preimage of infinity, where the
/// finite-radius curve closes up far from the parabola.
double parabola_residual(const BoundaryCurve& curve, double window = kParabolaWindow);

}  // namespace hshear
