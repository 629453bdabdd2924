#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hshear/boundary_rotation.hpp"
#include "hshear/geometry.hpp"

namespace hshear {

namespace family {
/// lambda z^N for lambda = e^{2 pi i k / phases}, N = 1..max_power.
struct MonomialGrid {
  int phases = 8;
  int max_power = 3;
};
/// `count` random Blaschke dilatations of total degree 1..max_degree.
struct BlaschkeRandom {
  int count = 50;
  int max_degree = 3;
  std::uint64_t seed = 7;
};
struct Explicit {
  std::vector<std::string> specs;
};
}  // namespace family

using OmegaFamily = std::variant<family::MonomialGrid, family::BlaschkeRandom, family::Explicit>;

/// 8 phases x N in {1,2,3} monomials plus 50 random Blaschke dilatations.
std::vector<OmegaFamily> default_family(std::uint64_t seed = 7);
/// "default" expands to both default families; see text_forms.hpp.
std::vector<OmegaFamily> parse_family(std::string_view text, std::uint64_t default_seed = 7);
/// Canonical omega text forms of every family member, in family order.
std::vector<std::string> expand_family(const std::vector<OmegaFamily>& families);

struct ProbeConfig {
  std::string phi_spec = "H";
  cplx eta{-1.0, 0.0};
  std::vector<OmegaFamily> omega_family = default_family();
  std::vector<double> radii = kDefaultLadder;
  int n_samples = kDefaultSamples;
  double tol_backturn = kDefaultBackturnTol;
  QuadratureConfig quadrature;
  /// Bisect each failing radius down towards the previous ladder rung.
  bool minimize_witness = true;
  int threads = 0;  // 0: hardware concurrency
};

struct RadiusVerdict {
  double r = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  double total_turning = 0.0;
  double worst_backturn = 0.0;
  std::optional<TurningWindow> window;
};

struct OmegaOutcome {
  std::string omega;
  std::vector<RadiusVerdict> verdicts;
  std::optional<std::string> error;
};

struct FailureWitness {
  std::string omega;
  double r = 0.0;
  double theta_begin = 0.0;
  double theta_end = 0.0;
  double backturn = 0.0;
};

enum class ProbeSummary { NoFailureFound, Failure };
const char* to_string(ProbeSummary s);

struct ProbeReport {
  std::string phi;
  cplx eta;
  std::vector<double> radii;
  int n_samples = 0;
  std::vector<OmegaOutcome> outcomes;  // sorted by omega text form
  std::vector<FailureWitness> failures;
  ProbeSummary summary = ProbeSummary::NoFailureFound;
  int inconclusive = 0;
  int errors = 0;
  std::vector<std::string> notes;
};

/// Shears phi with every dilatation of the family and checks convexity on
/// the radius ladder. NO_FAILURE_FOUND is evidence, never a proof.
ProbeReport probe_admissibility(const ProbeConfig& cfg);

/// Standalone re-run of one failure witness.
Verdict reproduce_witness(const ProbeConfig& cfg, const FailureWitness& w);

struct SuiteCase {
  std::string name;
  cplx xi;
  ProbeSummary expected;
  ProbeReport report;
  bool matches = false;
};

struct SuiteReport {
  std::vector<SuiteCase> cases;
  bool all_match = false;
};

/// Vertical shears of rotations H_xi with dilatation -xi z: FAILURE for
/// xi in {i, e^{i pi/4}, e^{i pi/3}}; NO_FAILURE_FOUND for xi = +-1 under
/// the default family.
SuiteReport rotated_counterexample_suite(const ProbeConfig& base = {});

struct CharacterizationRow {
  double r = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<double> failing_directions;
  bool consistent = true;
};

struct CharacterizationReport {
  std::vector<CharacterizationRow> rows;
  bool consistent = true;
};

/// Cross-checks convexity of f(rD) against directional convexity of
/// h - e^{2it} g in direction t, radius by radius.
CharacterizationReport css_characterization_check(const HarmonicMap& f,
                                                  const std::vector<double>& t_grid,
                                                  const std::vector<double>& radii,
                                                  int n = kDefaultSamples);

/// t_k = k pi / count.
std::vector<double> direction_grid(int count);

struct HalfPlane {
  cplx normal;    // unit, pointing into the domain
  double offset;  // domain: Re(conj(normal) w) > offset
};
struct Strip {
  cplx normal;
  double a, b;  // a < Re(conj(normal) w) < b
  double width_parameter() const { return (b - a) / kPi; }
};
struct OtherShape {};
using ImageShape = std::variant<HalfPlane, Strip, OtherShape>;

/// Fits one or two parallel lines to the image curve at r_max.
ImageShape halfplane_strip_identifier(const HarmonicMap& f, double r_max = 0.999,
                                      int n = kDefaultSamples);

}  // namespace hshear
