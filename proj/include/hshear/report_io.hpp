#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "hshear/boundary_rotation.hpp"
#include "hshear/geometry.hpp"
#include "hshear/probe.hpp"

namespace hshear {

using Json = nlohmann::json;

inline constexpr int kDefaultPrecision = 12;

/// x rounded to `digits` significant decimal digits.
double round_sig(double x, int digits = kDefaultPrecision);

/// Rectangle the SVG is clipped to.
struct ViewBox {
  double xmin, xmax, ymin, ymax;
};

struct CurveJsonOptions {
  int precision = kDefaultPrecision;
  bool parabola_overlay = false;
  std::optional<ViewBox> view;
};

/// Convexity report together with the curve it was computed from; the
/// result is everything render_svg needs.
Json to_json(const ConvexityReport& rep, const BoundaryCurve& curve,
             const CurveJsonOptions& opt = {});
Json to_json(const DirectionalReport& rep, int precision = kDefaultPrecision);
Json to_json(const ProbeReport& rep, int precision = kDefaultPrecision);
Json to_json(const SuiteReport& rep, int precision = kDefaultPrecision);
Json to_json(const MembershipResult& m, double k, int precision = kDefaultPrecision);

/// theta, re_z, im_z, re_f, im_f, re_h, im_h, re_g, im_g on |z| = r.
void write_shear_csv(std::ostream& out, const HarmonicMap& f, double r, int n,
                     int precision = kDefaultPrecision);

/// "# r=<r>" then theta, re, im, turning_increment.
void write_curve_csv(std::ostream& out, const BoundaryCurve& curve,
                     int precision = kDefaultPrecision);
/// Inverse of write_curve_csv. The tangent column is not stored.
BoundaryCurve read_curve_csv(std::istream& in);

/// Curve, back-turn window, midpoint witness and optional parabola, from a
/// report produced by to_json(ConvexityReport, ...).
std::string render_svg(const Json& report);

}  // namespace hshear
