#include "hshear/probe.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <random>
#include <thread>

#include "hshear/text_forms.hpp"

namespace hshear {

namespace {

constexpr double kScaleChoices[] = {1.0, 0.95, 0.8, 0.5};
constexpr int kWitnessBisections = 8;

std::string fmt(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

// Runs fn(0..count-1) on a small pool; fn must not throw.
template <class Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  std::size_t t = threads > 0 ? static_cast<std::size_t>(threads)
                              : std::max(1u, std::thread::hardware_concurrency());
  t = std::min(t, count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) fn(i);
  };
  if (t <= 1) {
    worker();
    return;
  }
  std::vector<std::jthread> pool;
  for (std::size_t k = 0; k < t; ++k) pool.emplace_back(worker);
}

RadiusVerdict verdict_at(const HarmonicMap& f, double r, const ProbeConfig& cfg) {
  const ConvexityReport rep = convexity_check(sample_turning(f, r, cfg.n_samples), cfg.tol_backturn);
  return {r, rep.verdict, rep.total_turning, rep.worst_backturn, rep.witness};
}

struct OmegaRun {
  OmegaOutcome outcome;
  std::optional<FailureWitness> witness;
  bool inconclusive = false;
  bool non_monotone = false;
};

OmegaRun run_omega(const AnalyticFunction& phi, const std::string& spec, const ProbeConfig& cfg) {
  OmegaRun run;
  run.outcome.omega = spec;
  try {
    const HarmonicMap f =
        shear_construct(make_shear_system(phi, parse_omega(spec), cfg.eta), cfg.quadrature);
    std::optional<std::size_t> first;
    for (std::size_t k = 0; k < cfg.radii.size(); ++k) {
      run.outcome.verdicts.push_back(verdict_at(f, cfg.radii[k], cfg));
      const Verdict v = run.outcome.verdicts.back().verdict;
      if (v == Verdict::NonConvex && !first) first = k;
      if (v != Verdict::NonConvex && first) run.non_monotone = true;
      if (v == Verdict::Inconclusive) run.inconclusive = true;
    }
    if (!first) return run;
    RadiusVerdict best = run.outcome.verdicts[*first];
    if (cfg.minimize_witness) {
      double lo = *first > 0 ? cfg.radii[*first - 1] : 0.0;
      double hi = best.r;
      for (int it = 0; it < kWitnessBisections; ++it) {
        const double mid = 0.5 * (lo + hi);
        const RadiusVerdict rv = verdict_at(f, mid, cfg);
        if (rv.verdict == Verdict::NonConvex && rv.window) {
          best = rv;
          hi = mid;
        } else {
          lo = mid;
        }
      }
    }
    const TurningWindow& w = *best.window;
    run.witness = FailureWitness{spec, best.r, w.theta_begin, w.theta_end, w.backturn};
  } catch (const std::exception& e) {
    run.outcome.error = e.what();
  }
  return run;
}

// Total least squares line through pts: unit normal, centroid, max residual.
struct LineFit {
  cplx normal;
  cplx centroid;
  double residual = 0.0;
};

LineFit fit_line(const std::vector<cplx>& pts) {
  Eigen::Vector2d c = Eigen::Vector2d::Zero();
  for (const cplx p : pts) c += Eigen::Vector2d(p.real(), p.imag());
  c /= static_cast<double>(pts.size());
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  for (const cplx p : pts) {
    const Eigen::Vector2d d = Eigen::Vector2d(p.real(), p.imag()) - c;
    cov += d * d.transpose();
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(cov);
  const Eigen::Vector2d nv = es.eigenvectors().col(0);
  LineFit fit{cplx(nv.x(), nv.y()), cplx(c.x(), c.y())};
  for (const cplx p : pts) {
    fit.residual = std::max(fit.residual, std::abs(std::real(std::conj(fit.normal) * (p - fit.centroid))));
  }
  return fit;
}

double along(cplx w, cplx n) { return std::real(std::conj(n) * w); }

std::vector<cplx> within(const BoundaryCurve& c, cplx center, double radius) {
  std::vector<cplx> out;
  for (Eigen::Index j = 0; j < c.size(); ++j) {
    if (std::abs(c.gamma[j] - center) <= radius) out.push_back(c.gamma[j]);
  }
  return out;
}

}  // namespace

std::vector<OmegaFamily> default_family(std::uint64_t seed) {
  family::BlaschkeRandom b;
  b.seed = seed;
  return {family::MonomialGrid{}, b};
}

std::vector<OmegaFamily> parse_family(std::string_view text, std::uint64_t default_seed) {
  const std::string_view explicit_prefix = "explicit:";
  if (text.substr(0, explicit_prefix.size()) == explicit_prefix) {
    family::Explicit e;
    std::string_view rest = text.substr(explicit_prefix.size());
    while (!rest.empty()) {
      const std::size_t semi = rest.find(';');
      const std::string item(rest.substr(0, semi));
      if (!item.empty()) {
        parse_omega(item);
        e.specs.push_back(item);
      }
      if (semi == std::string_view::npos) break;
      rest.remove_prefix(semi + 1);
    }
    if (e.specs.empty()) throw ParseError("explicit family needs at least one dilatation");
    return {e};
  }
  const KeyValues kv = parse_key_values(text);
  auto take = [&](const std::string& key) -> std::optional<std::string> {
    auto it = kv.args.find(key);
    if (it == kv.args.end()) return std::nullopt;
    return it->second;
  };
  auto check_keys = [&](std::initializer_list<const char*> allowed) {
    for (const auto& [k, v] : kv.args) {
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; })) {
        throw ParseError("unknown key '" + k + "' for family '" + kv.name + "'");
      }
    }
  };
  if (kv.name == "default") {
    check_keys({"seed"});
    const auto s = take("seed");
    return default_family(s ? static_cast<std::uint64_t>(parse_integer(*s)) : default_seed);
  }
  if (kv.name == "monomial-grid") {
    check_keys({"phases", "nmax"});
    family::MonomialGrid m;
    if (const auto p = take("phases")) m.phases = static_cast<int>(parse_integer(*p));
    if (const auto p = take("nmax")) m.max_power = static_cast<int>(parse_integer(*p));
    if (m.phases < 1 || m.max_power < 1) throw ParseError("monomial-grid needs phases, nmax >= 1");
    return {m};
  }
  if (kv.name == "blaschke-random") {
    check_keys({"count", "deg", "seed"});
    family::BlaschkeRandom b;
    b.seed = default_seed;
    if (const auto p = take("count")) b.count = static_cast<int>(parse_integer(*p));
    if (const auto p = take("deg")) b.max_degree = static_cast<int>(parse_integer(*p));
    if (const auto p = take("seed")) b.seed = static_cast<std::uint64_t>(parse_integer(*p));
    if (b.count < 0 || b.max_degree < 1) throw ParseError("blaschke-random needs count >= 0, deg >= 1");
    return {b};
  }
  throw ParseError("unknown family '" + kv.name + "'");
}

std::vector<std::string> expand_family(const std::vector<OmegaFamily>& families) {
  std::vector<std::string> out;
  for (const OmegaFamily& fam : families) {
    if (const auto* m = std::get_if<family::MonomialGrid>(&fam)) {
      for (int n = 1; n <= m->max_power; ++n) {
        for (int k = 0; k < m->phases; ++k) {
          out.push_back("monomial:lam_arg=" + fmt(2.0 * kPi * k / m->phases) + ",N=" + std::to_string(n));
        }
      }
    } else if (const auto* b = std::get_if<family::BlaschkeRandom>(&fam)) {
      std::mt19937_64 rng(b->seed);
      for (int i = 0; i < b->count; ++i) {
        const std::uint64_t sub = rng() >> 16;
        const int deg = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(b->max_degree));
        const double scale = kScaleChoices[rng() % std::size(kScaleChoices)];
        out.push_back("blaschke:seed=" + std::to_string(sub) + ",deg=" + std::to_string(deg) +
                      ",scale=" + fmt(scale));
      }
    } else {
      const auto& e = std::get<family::Explicit>(fam);
      out.insert(out.end(), e.specs.begin(), e.specs.end());
    }
  }
  return out;
}

const char* to_string(ProbeSummary s) {
  return s == ProbeSummary::Failure ? "FAILURE" : "NO_FAILURE_FOUND";
}

ProbeReport probe_admissibility(const ProbeConfig& cfg) {
  cfg.quadrature.validate();
  if (cfg.radii.empty()) throw DomainError("probe needs at least one radius");
  for (const double r : cfg.radii) {
    if (!(r > 0.0 && r < 1.0)) throw DomainError("probe radii must lie in (0, 1)");
  }
  if (cfg.n_samples < 64) throw DomainError("probe needs n_samples >= 64");
  const AnalyticFunction phi = parse_phi(cfg.phi_spec);
  const std::vector<std::string> specs = expand_family(cfg.omega_family);

  std::vector<OmegaRun> runs(specs.size());
  parallel_for(specs.size(), cfg.threads, [&](std::size_t i) { runs[i] = run_omega(phi, specs[i], cfg); });
  std::sort(runs.begin(), runs.end(),
            [](const OmegaRun& a, const OmegaRun& b) { return a.outcome.omega < b.outcome.omega; });

  ProbeReport rep;
  rep.phi = cfg.phi_spec;
  rep.eta = cfg.eta;
  rep.radii = cfg.radii;
  rep.n_samples = cfg.n_samples;
  std::vector<std::string> non_monotone;
  for (OmegaRun& run : runs) {
    if (run.witness) rep.failures.push_back(*run.witness);
    if (run.outcome.error) ++rep.errors;
    if (run.inconclusive && !run.witness) ++rep.inconclusive;
    if (run.non_monotone) non_monotone.push_back(run.outcome.omega);
    rep.outcomes.push_back(std::move(run.outcome));
  }
  rep.summary = rep.failures.empty() ? ProbeSummary::NoFailureFound : ProbeSummary::Failure;
  if (rep.summary == ProbeSummary::NoFailureFound) {
    rep.notes.push_back("no failure among " + std::to_string(specs.size()) +
                        " dilatations on the radius ladder; this is evidence, not a proof of "
                        "admissibility");
  }
  if (rep.inconclusive > 0) {
    rep.notes.push_back(std::to_string(rep.inconclusive) + " dilatation(s) gave INCONCLUSIVE verdicts");
  }
  if (rep.errors > 0) {
    rep.notes.push_back(std::to_string(rep.errors) + " dilatation(s) failed to construct or sample");
  }
  if (!rep.failures.empty()) {
    double rmin = rep.failures.front().r;
    for (const FailureWitness& w : rep.failures) rmin = std::min(rmin, w.r);
    rep.notes.push_back("smallest witness radius " + fmt(rmin) +
                        "; subdisk images of a convex harmonic map need not be convex, so a "
                        "witness at radius r shows that f(rD) is not convex, not that f(D) is not");
  }
  for (const std::string& s : non_monotone) {
    rep.notes.push_back("failure does not persist up the ladder for " + s);
  }
  return rep;
}

Verdict reproduce_witness(const ProbeConfig& cfg, const FailureWitness& w) {
  const HarmonicMap f = shear_construct(
      make_shear_system(parse_phi(cfg.phi_spec), parse_omega(w.omega), cfg.eta), cfg.quadrature);
  return convexity_check(sample_boundary(f, w.r, cfg.n_samples), cfg.tol_backturn).verdict;
}

SuiteReport rotated_counterexample_suite(const ProbeConfig& base) {
  struct Case {
    const char* name;
    double arg;
    ProbeSummary expected;
  };
  const Case cases[] = {
      {"xi=i", kPi / 2, ProbeSummary::Failure},
      {"xi=e^{i pi/4}", kPi / 4, ProbeSummary::Failure},
      {"xi=e^{i pi/3}", kPi / 3, ProbeSummary::Failure},
      {"xi=1", 0.0, ProbeSummary::NoFailureFound},
      {"xi=-1", kPi, ProbeSummary::NoFailureFound},
  };
  std::optional<BoundaryCurve> koebe;
  SuiteReport out;
  out.all_match = true;
  for (const Case& c : cases) {
    const cplx xi = polar1(c.arg);
    ProbeConfig cfg = base;
    cfg.eta = -1.0;
    cfg.phi_spec = c.arg == 0.0 ? "H" : "H:rot=" + fmt(c.arg);
    if (c.expected == ProbeSummary::Failure) {
      cfg.omega_family = {family::Explicit{{to_string(schwarz_spec::Monomial{-xi, 1})}}};
    }
    SuiteCase sc{c.name, xi, c.expected, probe_admissibility(cfg), false};
    sc.matches = sc.report.summary == c.expected;
    if (c.expected == ProbeSummary::Failure) {
      if (!koebe) koebe = sample_boundary(HarmonicMap::from_analytic(catalog(catalog_id::Koebe{})), 0.999, base.n_samples);
      const DirectionalReport d = directional_convexity_check(*koebe, c.arg);
      sc.report.notes.push_back("koebe directional check at t=" + fmt(c.arg) + ": " +
                                (d.pass ? "PASS" : "FAIL"));
    }
    out.all_match = out.all_match && sc.matches;
    out.cases.push_back(std::move(sc));
  }
  return out;
}

CharacterizationReport css_characterization_check(const HarmonicMap& f,
                                                  const std::vector<double>& t_grid,
                                                  const std::vector<double>& radii, int n) {
  CharacterizationReport rep;
  for (const double r : radii) {
    CharacterizationRow row;
    row.r = r;
    row.verdict = convexity_check(sample_boundary(f, r, n)).verdict;
    std::vector<char> fails(t_grid.size(), 0);
    parallel_for(t_grid.size(), 0, [&](std::size_t k) {
      const HarmonicMap fk = HarmonicMap::from_analytic(analytic_combination(f, t_grid[k]));
      fails[k] = !directional_convexity_check(sample_boundary(fk, r, n), t_grid[k]).pass;
    });
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
      if (fails[k]) row.failing_directions.push_back(t_grid[k]);
    }
    row.consistent = !(row.verdict == Verdict::Convex && !row.failing_directions.empty());
    rep.consistent = rep.consistent && row.consistent;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

std::vector<double> direction_grid(int count) {
  if (count < 1) throw DomainError("direction grid needs count >= 1");
  std::vector<double> t(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) t[static_cast<std::size_t>(k)] = kPi * k / count;
  return t;
}

ImageShape halfplane_strip_identifier(const HarmonicMap& f, double r_max, int n) {
  const BoundaryCurve curve = sample_boundary(f, r_max, n);
  const cplx center = f(0.0);
  Eigen::Index j1 = 0;
  (curve.gamma - center).abs().minCoeff(&j1);
  const double d0 = std::abs(curve.gamma[j1] - center);
  if (!(d0 > 0.0)) return OtherShape{};

  const std::vector<cplx> w1 = within(curve, curve.gamma[j1], d0);
  const LineFit l1 = fit_line(w1);
  if (w1.size() < 8 || l1.residual > 1e-3 * 2.0 * d0) return OtherShape{};
  cplx nrm = l1.normal;
  if (along(center - l1.centroid, nrm) < 0.0) nrm = -nrm;
  double offset = along(w1.front(), nrm);
  for (const cplx p : w1) offset = std::min(offset, along(p, nrm));

  const Eigen::ArrayXd s = (curve.gamma.real() * nrm.real() + curve.gamma.imag() * nrm.imag()) - offset;
  const double smax = s.maxCoeff();
  Eigen::Index j2 = -1;
  double best = 0.0;
  for (Eigen::Index j = 0; j < curve.size(); ++j) {
    if (s[j] < 0.5 * smax) continue;
    const double d = std::abs(curve.gamma[j] - center);
    if (j2 < 0 || d < best) {
      j2 = j;
      best = d;
    }
  }
  const HalfPlane half{nrm, offset};
  if (j2 < 0) return half;
  const double rad2 = 0.5 * s[j2];
  const std::vector<cplx> w2 = within(curve, curve.gamma[j2], rad2);
  if (w2.size() < 8) return half;
  const LineFit l2 = fit_line(w2);
  const bool parallel = std::abs(std::imag(std::conj(nrm) * l2.normal)) <= 1e-2;
  if (!parallel || l2.residual > 1e-3 * 2.0 * rad2) return half;
  double b = along(w2.front(), nrm);
  for (const cplx p : w2) b = std::max(b, along(p, nrm));
  return Strip{nrm, offset, b};
}

}  // namespace hshear
