#include "hshear/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hshear/text_forms.hpp"

namespace hshear::cli {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string exact(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

CaseCheck check(std::string what, bool pass, std::string detail) {
  return {std::move(what), pass, std::move(detail)};
}

// Points r e^{2 pi i k / m} for the given radii.
std::vector<cplx> polar_grid(const std::vector<double>& radii, int m) {
  std::vector<cplx> out;
  for (const double r : radii) {
    for (int k = 0; k < m; ++k) out.push_back(std::polar(r, 2.0 * kPi * k / m));
  }
  return out;
}

const std::vector<double> kGridRadii{0.1, 0.3, 0.5, 0.7, 0.9, 0.95, 0.99};

ProbeConfig probe_defaults(const CaseOptions& opt) {
  ProbeConfig cfg;
  cfg.omega_family = default_family(opt.seed);
  cfg.quadrature = opt.quadrature;
  cfg.threads = opt.threads;
  return cfg;
}

// Directions of the 64-point grid at which the curve passes.
std::vector<double> passing_directions(const BoundaryCurve& curve, int count) {
  std::vector<double> pass;
  for (const double t : direction_grid(count)) {
    if (directional_convexity_check(curve, t).pass) pass.push_back(t);
  }
  return pass;
}

std::string list(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s + "]";
}

CaseResult case_f0(const CaseOptions& opt) {
  CaseResult res{"f0", {}, Json::object()};
  const HarmonicMap f = shear_construct(
      make_shear_system(catalog(catalog_id::H{}), make_schwarz(schwarz_spec::Monomial{1.0, 1}), 1.0),
      opt.quadrature);
  const AnalyticFunction h0 = catalog(catalog_id::F0HPart{}), g0 = catalog(catalog_id::F0GPart{});
  double err = 0.0;
  for (const cplx z : polar_grid(kGridRadii, 32)) {
    const Vector2c hg = f.parts(z);
    err = std::max({err, std::abs(hg(0) - h0(z)), std::abs(hg(1) - g0(z))});
  }
  res.checks.push_back(check("closed forms h0, g0", err <= 1e-10, "max error " + fmt(err)));

  const BoundaryCurve far = sample_boundary(f, 0.9999, 4096);
  const double resid = parabola_residual(far);
  res.checks.push_back(check("parabola residual at r=0.9999", resid <= 5e-3, fmt(resid)));

  const BoundaryCurve c = sample_boundary(f, 0.99, kDefaultSamples);
  const ConvexityReport rep = convexity_check(c);
  bool witnessed = false;
  if (rep.midpoint) witnessed = winding_number(c, rep.midpoint->midpoint) == 0;
  res.checks.push_back(check("r=0.99 verdict", rep.verdict == Verdict::NonConvex && witnessed,
                             std::string(to_string(rep.verdict)) +
                                 (witnessed ? " with midpoint witness" : " without midpoint witness")));
  res.report = Json{{"closed_form_error", round_sig(err)},
                    {"parabola_residual", round_sig(resid)},
                    {"convexity", to_json(rep, c, {kDefaultPrecision, true, ViewBox{-6, 1, -3, 3}})}};
  return res;
}

CaseResult case_rotated(const CaseOptions& opt) {
  CaseResult res{"rotatedH", {}, Json::object()};
  const SuiteReport suite = rotated_counterexample_suite(probe_defaults(opt));
  for (const SuiteCase& c : suite.cases) {
    std::string detail = std::string("expected ") + to_string(c.expected) + ", observed " +
                         to_string(c.report.summary);
    if (!c.report.failures.empty()) detail += " at r=" + fmt(c.report.failures.front().r);
    res.checks.push_back(check(c.name, c.matches, detail));
  }
  res.report = to_json(suite);
  return res;
}

CaseResult case_llambda(const CaseOptions& opt) {
  CaseResult res{"Llambda", {}, Json::object()};
  Json probes = Json::array();
  for (const double arg : {kPi / 2, kPi / 3}) {
    ProbeConfig cfg = probe_defaults(opt);
    cfg.phi_spec = "Llambda:arg=" + exact(arg);
    const ProbeReport rep = probe_admissibility(cfg);
    res.checks.push_back(check(cfg.phi_spec + " vertical shears",
                               rep.summary == ProbeSummary::NoFailureFound,
                               std::string(to_string(rep.summary)) + " over " +
                                   std::to_string(rep.outcomes.size()) + " dilatations"));
    probes.push_back(to_json(rep));
  }
  const cplx lam = kI;
  const HarmonicMap f = shear_construct(
      make_shear_system(catalog(catalog_id::LLambda{lam}),
                        make_schwarz(schwarz_spec::Monomial{-1.0, 1}), -1.0),
      opt.quadrature);
  double err = 0.0;
  for (const cplx z : polar_grid(kGridRadii, 32)) {
    const Vector2c hg = f.parts(z);
    const cplx strip = (std::log(1.0 - lam * z) + std::log(1.0 - std::conj(lam) * z) -
                        2.0 * std::log(1.0 - z)) /
                       (2.0 - 2.0 * lam.real());
    err = std::max(err, std::abs(hg(0) - hg(1) - strip));
  }
  res.checks.push_back(check("h - g strip formula", err <= 1e-9, "max error " + fmt(err)));
  const BoundaryCurve c =
      sample_boundary(HarmonicMap::from_analytic(analytic_combination(f, 0.0)), 0.999, kDefaultSamples);
  const std::vector<double> pass = passing_directions(c, 64);
  res.checks.push_back(check("h - g convex only for t=0", pass == std::vector<double>{0.0},
                             "passing directions " + list(pass)));
  res.report = Json{{"probes", probes}, {"strip_formula_error", round_sig(err)},
                    {"passing_directions", pass}};
  return res;
}

CaseResult case_halfplane(const CaseOptions&) {
  CaseResult res{"halfplane", {}, Json::object()};
  const ImageShape h = halfplane_strip_identifier(HarmonicMap::from_analytic(catalog(catalog_id::H{})));
  if (const auto* hp = std::get_if<HalfPlane>(&h)) {
    const bool ok = std::abs(hp->offset + 0.5) <= 1e-3 && std::abs(hp->normal - 1.0) <= 1e-3;
    res.checks.push_back(check("H half-plane", ok, "normal " + fmt(hp->normal.real()) + "," +
                                                       fmt(hp->normal.imag()) + " offset " + fmt(hp->offset)));
    res.report["H"] = Json{{"shape", "HALF_PLANE"}, {"offset", round_sig(hp->offset)}};
  } else {
    res.checks.push_back(check("H half-plane", false, "not classified as a half-plane"));
  }
  const ImageShape l =
      halfplane_strip_identifier(HarmonicMap::from_analytic(catalog(catalog_id::LLambda{kI})));
  if (const auto* st = std::get_if<Strip>(&l)) {
    const double a = st->width_parameter();
    res.checks.push_back(check("L_i strip", std::abs(a - 0.5) <= 1e-3, "A = " + fmt(a)));
    res.report["Llambda_i"] = Json{{"shape", "STRIP"}, {"a", round_sig(st->a)}, {"b", round_sig(st->b)},
                                   {"A", round_sig(a)}};
  } else {
    res.checks.push_back(check("L_i strip", false, "not classified as a strip"));
  }
  return res;
}

CaseResult case_koebe(const CaseOptions&) {
  CaseResult res{"koebe-directions", {}, Json::object()};
  const BoundaryCurve c = sample_boundary(HarmonicMap::from_analytic(catalog(catalog_id::Koebe{})),
                                          0.999, kDefaultSamples);
  const std::vector<double> pass = passing_directions(c, 64);
  res.checks.push_back(check("koebe convex only for t=0 on 64 directions",
                             pass == std::vector<double>{0.0}, "passing directions " + list(pass)));
  res.report = Json{{"r", 0.999}, {"passing_directions", pass}};
  return res;
}

CaseResult case_brannan(const CaseOptions& opt) {
  CaseResult res{"brannan", {}, Json::object()};
  const std::pair<const char*, CatalogId> convex[] = {{"H", catalog_id::H{}},
                                                      {"H_ROT_MINUS1", catalog_id::HRotMinus1{}},
                                                      {"Llambda_i", catalog_id::LLambda{kI}},
                                                      {"identity", catalog_id::Identity{}}};
  for (const auto& [name, id] : convex) {
    double worst = 0.0;
    for (const double r : kDefaultLadder) {
      worst = std::max(worst, std::abs(boundary_rotation_value(catalog(id), r).value_over_pi - 2.0));
    }
    res.checks.push_back(check(std::string(name) + " value_over_pi = 2", worst <= 1e-9,
                               "max deviation " + fmt(worst)));
  }
  const AnalyticFunction psi1 = brannan_transform(catalog(catalog_id::H{}), -1.0, 1, opt.quadrature);
  const AnalyticFunction psi2 = brannan_transform(catalog(catalog_id::H{}), 1.0, 2, opt.quadrature);
  const MembershipResult m1 = vk_membership(psi1, 4.0), m2 = vk_membership(psi2, 6.0);
  res.checks.push_back(check("psi(lambda=-1,N=1) in V_4", m1.member, "max " + fmt(m1.max_value)));
  res.checks.push_back(check("psi(lambda=1,N=2) in V_6", m2.member, "max " + fmt(m2.max_value)));
  const AnalyticFunction k = catalog(catalog_id::Koebe{});
  double err = 0.0;
  for (const cplx z : polar_grid(kGridRadii, 32)) err = std::max(err, std::abs(psi1(z) - k(z)));
  res.checks.push_back(check("psi(lambda=-1,N=1) = koebe", err <= 1e-10, "max error " + fmt(err)));
  res.report = Json{{"psi_minus1_N1", to_json(m1, 4.0)}, {"psi_1_N2", to_json(m2, 6.0)},
                    {"koebe_error", round_sig(err)}};
  return res;
}

std::filesystem::path output_path(const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("HSHEAR_OUTPUT_DIR"); dir && *dir) path = std::filesystem::path(dir) / path;
  }
  return path;
}

void write_text(const std::string& dest, const std::string& text) {
  if (dest.empty() || dest == "-") {
    std::cout << text;
    return;
  }
  const auto path = output_path(dest);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string read_text(const std::string& src) {
  std::ifstream in(src);
  if (!in) throw std::runtime_error("cannot read " + src);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

bool CaseResult::pass() const {
  if (checks.empty()) return false;
  for (const CaseCheck& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

CaseResult run_case(const std::string& name, const CaseOptions& opt) {
  if (name == "f0") return case_f0(opt);
  if (name == "rotatedH") return case_rotated(opt);
  if (name == "Llambda") return case_llambda(opt);
  if (name == "halfplane") return case_halfplane(opt);
  if (name == "koebe-directions") return case_koebe(opt);
  if (name == "brannan") return case_brannan(opt);
  throw ParseError("unknown case '" + name + "'");
}

int run(int argc, const char* const* argv) {
  CLI::App app{"Harmonic shears, convexity checks and admissibility probes", "hshear"};
  app.require_subcommand(1);
  app.fallthrough();

  QuadratureConfig quad;
  int precision = kDefaultPrecision;
  std::string output;
  int threads = 0;
  app.add_option("--quad-tol", quad.abs_tol, "absolute quadrature tolerance")->capture_default_str();
  app.add_option("--quad-order", quad.order, "Gauss-Legendre order")->capture_default_str();
  app.add_option("--precision", precision, "significant digits in output")
      ->check(CLI::Range(6, 17))
      ->capture_default_str();
  app.add_option("--output,-o", output, "output file (default stdout; relative to $HSHEAR_OUTPUT_DIR)");
  app.add_option("--threads", threads, "worker threads, 0 for all cores")->check(CLI::NonNegativeNumber);

  std::string phi = "H", omega = "zero", eta_text = "-1,0";
  double r = 0.99;
  int n = kDefaultSamples;
  auto map_options = [&](CLI::App* sub) {
    sub->add_option("--phi", phi, "analytic datum")->capture_default_str();
    sub->add_option("--omega", omega, "dilatation")->capture_default_str();
    sub->add_option("--eta", eta_text, "shear direction 're,im' or 'theta=..'")->capture_default_str();
    sub->add_option("--r", r, "radius")->capture_default_str();
  };

  CLI::App* shear = app.add_subcommand("shear", "sample h, g and f = h + conj(g) on |z| = r as CSV");
  map_options(shear);
  int shear_n = 256;
  std::string shear_csv;
  shear->add_option("--n", shear_n, "samples")->check(CLI::PositiveNumber)->capture_default_str();
  shear->add_option("--csv", shear_csv, "CSV destination (default --output)");

  CLI::App* convex = app.add_subcommand("convexity", "convexity report of the curve f(r e^{i theta})");
  map_options(convex);
  std::optional<double> direction;
  std::string svg, csv, from_json, view_text;
  double tol = kDefaultBackturnTol;
  bool parabola = false;
  convex->add_option("--n", n, "samples")->capture_default_str();
  convex->add_option("--tol-backturn", tol, "back-turn tolerance")->capture_default_str();
  convex->add_option("--direction", direction, "also check convexity in direction t");
  convex->add_option("--svg", svg, "SVG plot destination");
  convex->add_option("--csv", csv, "curve CSV destination");
  convex->add_flag("--parabola", parabola, "overlay the parabola u = -v^2 - 1/4");
  convex->add_option("--view", view_text, "clip the plot to xmin,xmax,ymin,ymax");
  convex->add_option("--from-json", from_json, "re-render --svg from a saved report")
      ->check(CLI::ExistingFile);

  CLI::App* probe = app.add_subcommand("probe", "search shears of phi for convexity failures");
  std::vector<std::string> families;
  std::uint64_t seed = 7;
  std::string radii_text;
  bool no_minimize = false;
  probe->add_option("--phi", phi, "analytic datum")->capture_default_str();
  probe->add_option("--eta", eta_text, "shear direction")->capture_default_str();
  probe->add_option("--family", families, "dilatation family (repeatable; default: default)");
  probe->add_option("--seed", seed, "seed for random families")->capture_default_str();
  probe->add_option("--radii", radii_text, "radius ladder, comma separated");
  probe->add_option("--n", n, "samples per curve")->capture_default_str();
  probe->add_option("--tol-backturn", tol, "back-turn tolerance")->capture_default_str();
  probe->add_flag("--no-minimize", no_minimize, "keep witnesses at ladder radii");

  CLI::App* vk = app.add_subcommand("vk", "boundary rotation of phi on the radius ladder");
  double k = 2.0;
  std::optional<int> vk_n;
  vk->add_option("--phi", phi, "analytic datum")->capture_default_str();
  vk->add_option("--k", k, "class index")->capture_default_str();
  vk->add_option("--radii", radii_text, "radius ladder, comma separated");
  vk->add_option("--n", vk_n, "trapezoid samples (default adapts to r)");

  CLI::App* repro = app.add_subcommand("reproduce", "run a named suite and compare with the expected outcome");
  std::string case_name;
  repro->add_option("--case", case_name, "suite name")->required()->check(CLI::IsMember(kCases));
  repro->add_option("--seed", seed, "seed for random families")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    quad.validate();
    if (*shear) {
      const HarmonicMap f = shear_construct(
          make_shear_system(parse_phi(phi), parse_omega(omega), parse_eta(eta_text)), quad);
      std::ostringstream ss;
      write_shear_csv(ss, f, r, shear_n, precision);
      write_text(shear_csv.empty() ? output : shear_csv, ss.str());
      return 0;
    }
    if (*convex) {
      if (!from_json.empty()) {
        if (svg.empty()) throw ParseError("--from-json needs --svg");
        write_text(svg, render_svg(Json::parse(read_text(from_json))));
        return 0;
      }
      const HarmonicMap f = shear_construct(
          make_shear_system(parse_phi(phi), parse_omega(omega), parse_eta(eta_text)), quad);
      const BoundaryCurve curve = sample_boundary(f, r, n);
      const ConvexityReport rep = convexity_check(curve, tol);
      CurveJsonOptions opt{precision, parabola, std::nullopt};
      if (!view_text.empty()) {
        const auto v = parse_real_list(view_text);
        if (v.size() != 4 || !(v[0] < v[1]) || !(v[2] < v[3])) {
          throw ParseError("--view needs xmin<xmax,ymin<ymax");
        }
        opt.view = ViewBox{v[0], v[1], v[2], v[3]};
      }
      Json j = to_json(rep, curve, opt);
      j["phi"] = phi;
      j["omega"] = omega;
      j["eta"] = eta_text;
      if (direction) j["directional"] = to_json(directional_convexity_check(curve, *direction), precision);
      write_text(output, j.dump(1) + "\n");
      if (!svg.empty()) write_text(svg, render_svg(j));
      if (!csv.empty()) {
        std::ostringstream ss;
        write_curve_csv(ss, curve, precision);
        write_text(csv, ss.str());
      }
      return 0;
    }
    if (*probe) {
      ProbeConfig cfg;
      cfg.phi_spec = phi;
      parse_phi(phi);
      cfg.eta = parse_eta(eta_text);
      cfg.omega_family.clear();
      for (const std::string& fam : families) {
        for (OmegaFamily& of : parse_family(fam, seed)) cfg.omega_family.push_back(std::move(of));
      }
      if (families.empty()) cfg.omega_family = default_family(seed);
      if (!radii_text.empty()) cfg.radii = parse_real_list(radii_text);
      cfg.n_samples = n;
      cfg.tol_backturn = tol;
      cfg.quadrature = quad;
      cfg.minimize_witness = !no_minimize;
      cfg.threads = threads;
      std::cerr << "seed=" << seed << "\n";
      const ProbeReport rep = probe_admissibility(cfg);
      Json j = to_json(rep, precision);
      j["seed"] = seed;
      write_text(output, j.dump(1) + "\n");
      return 0;
    }
    if (*vk) {
      const AnalyticFunction f = parse_phi(phi);
      const std::vector<double> radii = radii_text.empty() ? kDefaultLadder : parse_real_list(radii_text);
      MembershipResult m;
      if (vk_n) {
        m.member = true;
        for (const double rr : radii) {
          m.values.push_back(boundary_rotation_value(f, rr, *vk_n));
          m.max_value = std::max(m.max_value, m.values.back().value_over_pi);
        }
        m.member = m.max_value <= k + 1e-6;
      } else {
        m = vk_membership(f, k, radii);
      }
      Json j = to_json(m, k, precision);
      j["phi"] = phi;
      write_text(output, j.dump(1) + "\n");
      return 0;
    }
    if (*repro) {
      std::cout << "seed=" << seed << "\n";
      const CaseResult res = run_case(case_name, CaseOptions{seed, quad, threads});
      for (const CaseCheck& c : res.checks) {
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.what << ": " << c.detail << "\n";
      }
      std::cout << "case " << res.name << ": " << (res.pass() ? "PASS" : "FAIL") << "\n";
      if (!output.empty()) {
        Json j = res.report;
        j["case"] = res.name;
        j["seed"] = seed;
        j["pass"] = res.pass();
        write_text(output, j.dump(1) + "\n");
      }
      return res.pass() ? 0 : 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace hshear::cli
