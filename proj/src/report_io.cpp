#include "hshear/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "hshear/text_forms.hpp"

namespace hshear {

namespace {

void check_precision(int p) {
  if (p < 6 || p > 17) throw DomainError("precision must lie in [6, 17]");
}

std::string num(double x, int precision) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", precision, x);
  return buf;
}

Json cjson(cplx z, int p) { return Json{{"re", round_sig(z.real(), p)}, {"im", round_sig(z.imag(), p)}}; }

Json window_json(const TurningWindow& w, int p) {
  return Json{{"begin", w.begin},
              {"length", w.length},
              {"theta_begin", round_sig(w.theta_begin, p)},
              {"theta_end", round_sig(w.theta_end, p)},
              {"backturn", round_sig(w.backturn, p)}};
}

Json probe_json(const ProbeReport& rep, int p) {
  Json outcomes = Json::array();
  for (const OmegaOutcome& o : rep.outcomes) {
    Json verdicts = Json::array();
    for (const RadiusVerdict& v : o.verdicts) {
      Json jv{{"r", round_sig(v.r, p)},
              {"verdict", to_string(v.verdict)},
              {"total_turning", round_sig(v.total_turning, p)},
              {"worst_backturn", round_sig(v.worst_backturn, p)}};
      if (v.window) jv["window"] = window_json(*v.window, p);
      verdicts.push_back(std::move(jv));
    }
    Json jo{{"omega", o.omega}, {"verdicts", std::move(verdicts)}};
    if (o.error) jo["error"] = *o.error;
    outcomes.push_back(std::move(jo));
  }
  Json failures = Json::array();
  for (const FailureWitness& w : rep.failures) {
    failures.push_back(Json{{"omega", w.omega},
                            {"r", round_sig(w.r, p)},
                            {"theta_begin", round_sig(w.theta_begin, p)},
                            {"theta_end", round_sig(w.theta_end, p)},
                            {"backturn", round_sig(w.backturn, p)}});
  }
  Json radii = Json::array();
  for (const double r : rep.radii) radii.push_back(round_sig(r, p));
  return Json{{"phi", rep.phi},
              {"eta", cjson(rep.eta, p)},
              {"radii", std::move(radii)},
              {"n_samples", rep.n_samples},
              {"summary", to_string(rep.summary)},
              {"failures", std::move(failures)},
              {"inconclusive", rep.inconclusive},
              {"errors", rep.errors},
              {"notes", rep.notes},
              {"outcomes", std::move(outcomes)}};
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

// Maps plane coordinates to SVG pixels.
struct Frame {
  double x0, y1, scale;
  double x(double u) const { return (u - x0) * scale; }
  double y(double v) const { return (y1 - v) * scale; }
};

std::string polyline(const std::vector<std::pair<double, double>>& pts, const Frame& fr,
                     const std::string& style) {
  std::string s = "<polyline fill=\"none\" " + style + " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) s += ' ';
    s += num(fr.x(pts[i].first), 6) + "," + num(fr.y(pts[i].second), 6);
  }
  return s + "\"/>\n";
}

}  // namespace

double round_sig(double x, int digits) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
  return std::strtod(buf, nullptr);
}

Json to_json(const ConvexityReport& rep, const BoundaryCurve& curve, const CurveJsonOptions& opt) {
  const int p = opt.precision;
  check_precision(p);
  Json j{{"verdict", to_string(rep.verdict)},
         {"r", round_sig(rep.r, p)},
         {"n", curve.size()},
         {"total_turning", round_sig(rep.total_turning, p)},
         {"worst_backturn", round_sig(rep.worst_backturn, p)},
         {"near_boundary", curve.near_boundary}};
  if (rep.witness) j["witness"] = window_json(*rep.witness, p);
  if (rep.midpoint) {
    j["midpoint_witness"] = Json{{"a", cjson(rep.midpoint->a, p)},
                                 {"b", cjson(rep.midpoint->b, p)},
                                 {"midpoint", cjson(rep.midpoint->midpoint, p)}};
  }
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index k = 0; k < curve.size(); ++k) {
    re.push_back(round_sig(curve.gamma[k].real(), p));
    im.push_back(round_sig(curve.gamma[k].imag(), p));
  }
  j["curve"] = Json{{"re", std::move(re)}, {"im", std::move(im)}};
  j["parabola_overlay"] = opt.parabola_overlay;
  if (opt.view) {
    j["view"] = Json{{"xmin", opt.view->xmin}, {"xmax", opt.view->xmax},
                     {"ymin", opt.view->ymin}, {"ymax", opt.view->ymax}};
  }
  return j;
}

Json to_json(const DirectionalReport& rep, int precision) {
  check_precision(precision);
  return Json{{"t", round_sig(rep.t, precision)},
              {"pass", rep.pass},
              {"sign_changes", rep.sign_changes}};
}

Json to_json(const ProbeReport& rep, int precision) {
  check_precision(precision);
  return probe_json(rep, precision);
}

Json to_json(const SuiteReport& rep, int precision) {
  check_precision(precision);
  Json cases = Json::array();
  for (const SuiteCase& c : rep.cases) {
    cases.push_back(Json{{"name", c.name},
                         {"xi", cjson(c.xi, precision)},
                         {"expected", to_string(c.expected)},
                         {"observed", to_string(c.report.summary)},
                         {"matches", c.matches},
                         {"report", probe_json(c.report, precision)}});
  }
  return Json{{"all_match", rep.all_match}, {"cases", std::move(cases)}};
}

Json to_json(const MembershipResult& m, double k, int precision) {
  check_precision(precision);
  Json values = Json::array();
  for (const RotationValue& v : m.values) {
    values.push_back(Json{{"r", round_sig(v.r, precision)},
                          {"value_over_pi", round_sig(v.value_over_pi, precision)}});
  }
  return Json{{"k", round_sig(k, precision)},
              {"member", m.member},
              {"max_value_over_pi", round_sig(m.max_value, precision)},
              {"values", std::move(values)},
              {"note", "the supremum over r < 1 is approximated by the radius ladder"}};
}

void write_shear_csv(std::ostream& out, const HarmonicMap& f, double r, int n, int precision) {
  check_precision(precision);
  if (!(r > 0.0 && r < 1.0)) throw DomainError("radius must lie in (0, 1)");
  if (n < 1) throw DomainError("need at least one sample");
  out << "theta,re_z,im_z,re_f,im_f,re_h,im_h,re_g,im_g\n";
  for (int j = 0; j < n; ++j) {
    const double th = 2.0 * kPi * j / n;
    const cplx z = std::polar(r, th);
    const Vector2c hg = f.parts(z);
    const cplx w = hg(0) + std::conj(hg(1));
    out << num(th, precision) << ',' << num(z.real(), precision) << ',' << num(z.imag(), precision)
        << ',' << num(w.real(), precision) << ',' << num(w.imag(), precision) << ','
        << num(hg(0).real(), precision) << ',' << num(hg(0).imag(), precision) << ','
        << num(hg(1).real(), precision) << ',' << num(hg(1).imag(), precision) << '\n';
  }
}

void write_curve_csv(std::ostream& out, const BoundaryCurve& curve, int precision) {
  check_precision(precision);
  out << "# r=" << num(curve.r, 17) << "\n";
  out << "theta,re,im,turning_increment\n";
  for (Eigen::Index j = 0; j < curve.size(); ++j) {
    out << num(curve.theta[j], precision) << ',' << num(curve.gamma[j].real(), precision) << ','
        << num(curve.gamma[j].imag(), precision) << ',' << num(curve.turning[j], precision) << '\n';
  }
}

BoundaryCurve read_curve_csv(std::istream& in) {
  BoundaryCurve c;
  std::vector<double> th, re, im, turn;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# r=", 0) == 0) {
      c.r = parse_real(line.substr(4));
      continue;
    }
    if (line[0] == '#') continue;
    if (!header) {
      if (line != "theta,re,im,turning_increment") throw ParseError("unexpected curve CSV header");
      header = true;
      continue;
    }
    const auto cols = split_csv(line);
    if (cols.size() != 4) throw ParseError("curve CSV rows need 4 columns");
    th.push_back(parse_real(cols[0]));
    re.push_back(parse_real(cols[1]));
    im.push_back(parse_real(cols[2]));
    turn.push_back(parse_real(cols[3]));
  }
  const auto n = static_cast<Eigen::Index>(th.size());
  if (n < 3) throw ParseError("curve CSV has too few rows");
  c.theta = Eigen::Map<Eigen::ArrayXd>(th.data(), n);
  c.turning = Eigen::Map<Eigen::ArrayXd>(turn.data(), n);
  c.gamma.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) c.gamma[j] = cplx(re[j], im[j]);
  return c;
}

std::string render_svg(const Json& report) {
  const auto& re = report.at("curve").at("re");
  const auto& im = report.at("curve").at("im");
  const std::size_t n = re.size();
  if (n == 0 || im.size() != n) throw ParseError("report has no curve");
  std::vector<std::pair<double, double>> pts(n);
  for (std::size_t k = 0; k < n; ++k) pts[k] = {re[k].get<double>(), im[k].get<double>()};

  ViewBox box{};
  if (report.contains("view")) {
    const auto& v = report["view"];
    box = {v.at("xmin").get<double>(), v.at("xmax").get<double>(), v.at("ymin").get<double>(),
           v.at("ymax").get<double>()};
  } else {
    box = {pts[0].first, pts[0].first, pts[0].second, pts[0].second};
    for (const auto& [x, y] : pts) {
      box.xmin = std::min(box.xmin, x);
      box.xmax = std::max(box.xmax, x);
      box.ymin = std::min(box.ymin, y);
      box.ymax = std::max(box.ymax, y);
    }
  }
  double w = box.xmax - box.xmin, h = box.ymax - box.ymin;
  if (!(w > 0.0)) w = 1.0;
  if (!(h > 0.0)) h = 1.0;
  box.xmin -= 0.05 * w;
  box.xmax += 0.05 * w;
  box.ymin -= 0.05 * h;
  box.ymax += 0.05 * h;
  const double px = 800.0 / std::max(box.xmax - box.xmin, box.ymax - box.ymin);
  const Frame fr{box.xmin, box.ymax, px};
  const double width = (box.xmax - box.xmin) * px, height = (box.ymax - box.ymin) * px;

  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width, 6) +
                  "\" height=\"" + num(height, 6) + "\" viewBox=\"0 0 " + num(width, 6) + " " +
                  num(height, 6) + "\">\n";
  s += "<defs><clipPath id=\"view\"><rect x=\"0\" y=\"0\" width=\"" + num(width, 6) +
       "\" height=\"" + num(height, 6) + "\"/></clipPath></defs>\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<g clip-path=\"url(#view)\">\n";
  if (box.ymin < 0.0 && box.ymax > 0.0) {
    s += "<line x1=\"0\" y1=\"" + num(fr.y(0.0), 6) + "\" x2=\"" + num(width, 6) + "\" y2=\"" +
         num(fr.y(0.0), 6) + "\" stroke=\"#bbb\" stroke-width=\"0.5\"/>\n";
  }
  if (box.xmin < 0.0 && box.xmax > 0.0) {
    s += "<line x1=\"" + num(fr.x(0.0), 6) + "\" y1=\"0\" x2=\"" + num(fr.x(0.0), 6) + "\" y2=\"" +
         num(height, 6) + "\" stroke=\"#bbb\" stroke-width=\"0.5\"/>\n";
  }
  if (report.value("parabola_overlay", false)) {
    std::vector<std::pair<double, double>> par;
    for (int k = 0; k <= 400; ++k) {
      const double v = box.ymin + (box.ymax - box.ymin) * k / 400.0;
      par.emplace_back(-v * v - 0.25, v);
    }
    s += polyline(par, fr, "stroke=\"#2a7\" stroke-width=\"1\" stroke-dasharray=\"4 3\"");
  }
  std::vector<std::pair<double, double>> closed = pts;
  closed.push_back(pts.front());
  s += polyline(closed, fr, "stroke=\"#124\" stroke-width=\"1.2\"");
  if (report.contains("witness")) {
    const auto& wj = report["witness"];
    const auto begin = wj.at("begin").get<std::size_t>();
    const auto length = wj.at("length").get<std::size_t>();
    std::vector<std::pair<double, double>> seg;
    for (std::size_t k = 0; k <= length && k <= n; ++k) seg.push_back(pts[(begin + k) % n]);
    s += polyline(seg, fr, "stroke=\"#d22\" stroke-width=\"3\"");
  }
  if (report.contains("midpoint_witness")) {
    const auto& mj = report["midpoint_witness"];
    auto pt = [&](const char* key) {
      return std::make_pair(mj.at(key).at("re").get<double>(), mj.at(key).at("im").get<double>());
    };
    const auto a = pt("a"), b = pt("b"), m = pt("midpoint");
    s += polyline({a, b}, fr, "stroke=\"#e80\" stroke-width=\"1\"");
    s += "<circle cx=\"" + num(fr.x(m.first), 6) + "\" cy=\"" + num(fr.y(m.second), 6) +
         "\" r=\"3\" fill=\"#e80\"/>\n";
  }
  s += "</g>\n<text x=\"8\" y=\"16\" font-family=\"monospace\" font-size=\"12\">" +
       report.value("verdict", std::string{}) + " r=" + num(report.value("r", 0.0), 6) + "</text>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace hshear
