#include "hshear/text_forms.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>

namespace hshear {

namespace {

using Parsed = KeyValues;

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// "name:k=v,k=v"; values may themselves contain ':'.
Parsed parse_kv(std::string_view text) {
  Parsed p;
  const std::size_t colon = text.find(':');
  p.name = trim(text.substr(0, colon));
  if (colon == std::string_view::npos) return p;
  for (const std::string& item : split(text.substr(colon + 1), ',')) {
    if (item.empty()) continue;
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value in '" + item + "'");
    const std::string key = trim(std::string_view(item).substr(0, eq));
    if (p.args.count(key)) throw ParseError("duplicate key '" + key + "'");
    p.args[key] = trim(std::string_view(item).substr(eq + 1));
  }
  return p;
}

double to_real(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ParseError("not a finite real number: '" + s + "'");
  }
  return v;
}

long long to_int(const std::string& s) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError("not an integer: '" + s + "'");
  }
  return v;
}

class Args {
 public:
  explicit Args(Parsed p) : p_(std::move(p)) {}

  std::optional<double> real(const std::string& key) {
    auto it = p_.args.find(key);
    if (it == p_.args.end()) return std::nullopt;
    used_.push_back(key);
    return to_real(it->second);
  }
  double real(const std::string& key, double fallback) { return real(key).value_or(fallback); }
  std::optional<std::string> text(const std::string& key) {
    auto it = p_.args.find(key);
    if (it == p_.args.end()) return std::nullopt;
    used_.push_back(key);
    return it->second;
  }
  const std::string& name() const { return p_.name; }

  /// Complex from key_re/key_im or key_arg (unimodular).
  std::optional<cplx> complex(const std::string& re, const std::string& im, const std::string& arg) {
    const auto a = real(arg);
    const auto x = real(re);
    const auto y = real(im);
    if (a && (x || y)) throw ParseError("give either " + arg + " or " + re + "/" + im);
    if (a) return polar1(*a);
    if (x || y) return cplx(x.value_or(0.0), y.value_or(0.0));
    return std::nullopt;
  }

  void finish() const {
    for (const auto& [k, v] : p_.args) {
      if (std::find(used_.begin(), used_.end(), k) == used_.end()) {
        throw ParseError("unknown key '" + k + "' for '" + p_.name + "'");
      }
    }
  }

 private:
  Parsed p_;
  std::vector<std::string> used_;
};

CatalogId catalog_from(Args& a) {
  const std::string& n = a.name();
  if (n == "H") return catalog_id::H{};
  if (n == "H_ROT_MINUS1" || n == "Hm1") return catalog_id::HRotMinus1{};
  if (n == "koebe" || n == "KOEBE") return catalog_id::Koebe{};
  if (n == "identity" || n == "IDENTITY") return catalog_id::Identity{};
  if (n == "f0h" || n == "F0_H_PART") return catalog_id::F0HPart{};
  if (n == "f0g" || n == "F0_G_PART") return catalog_id::F0GPart{};
  if (n == "Llambda" || n == "L_LAMBDA") {
    const auto lam = a.complex("re", "im", "arg");
    if (!lam) throw ParseError("Llambda needs re=,im= or arg=");
    return catalog_id::LLambda{*lam};
  }
  if (n == "mobius" || n == "MOBIUS_HALFPLANE") {
    const auto c = a.complex("re", "im", "arg");
    if (!c) throw ParseError("mobius needs re=,im= or arg=");
    return catalog_id::MobiusHalfplane{*c};
  }
  throw ParseError("unknown catalog function '" + n + "'");
}

}  // namespace

KeyValues parse_key_values(std::string_view text) { return parse_kv(text); }
double parse_real(const std::string& text) { return to_real(text); }
long long parse_integer(const std::string& text) { return to_int(text); }

CatalogId parse_catalog(std::string_view text) {
  Args a(parse_kv(text));
  CatalogId id = catalog_from(a);
  a.finish();
  return id;
}

AnalyticFunction parse_phi(std::string_view text) {
  Args a(parse_kv(text));
  const CatalogId id = catalog_from(a);
  const auto rot = a.real("rot");
  a.finish();
  AnalyticFunction phi = catalog(id);
  if (rot && *rot != 0.0) {
    phi = rotate_analytic(phi, polar1(*rot));
    return AnalyticFunction(
        std::string(text), [phi](cplx z) { return phi(z); },
        [phi](cplx z) { return phi.derivatives(z); }, phi.closed_form());
  }
  return phi;
}

SchwarzFunction parse_omega(std::string_view text) {
  Args a(parse_kv(text));
  const std::string& n = a.name();
  SchwarzSpec spec;
  if (n == "zero" || n == "ZERO") {
    spec = schwarz_spec::Zero{};
  } else if (n == "monomial" || n == "MONOMIAL") {
    schwarz_spec::Monomial m;
    if (const auto lam = a.complex("lam_re", "lam_im", "lam_arg")) m.lambda = *lam;
    if (const auto p = a.text("N")) m.power = static_cast<int>(to_int(*p));
    spec = m;
  } else if (n == "blaschke" || n == "BLASCHKE") {
    if (const auto seed = a.text("seed")) {
      const auto deg = a.text("deg");
      const double scale = a.real("scale", 1.0);
      a.finish();
      const long long d = deg ? to_int(*deg) : 1;
      return random_blaschke(static_cast<std::uint64_t>(to_int(*seed)), static_cast<int>(d),
                             scale);
    }
    schwarz_spec::Blaschke b;
    if (const auto zs = a.text("zeros"); zs && !zs->empty()) {
      for (const std::string& item : split(*zs, '/')) {
        const auto parts = split(item, ':');
        if (parts.size() != 2) throw ParseError("Blaschke zero must be re:im, got '" + item + "'");
        b.zeros.emplace_back(to_real(parts[0]), to_real(parts[1]));
      }
    }
    b.gamma = a.real("gamma", 0.0);
    if (const auto s = a.real("scale")) {
      if (a.real("scale_re") || a.real("scale_im")) throw ParseError("give scale or scale_re/scale_im");
      b.scale = *s;
    } else {
      b.scale = cplx(a.real("scale_re", 1.0), a.real("scale_im", 0.0));
    }
    spec = b;
  } else {
    throw ParseError("unknown dilatation '" + n + "'");
  }
  a.finish();
  return make_schwarz(spec, std::string(text));
}

cplx parse_eta(std::string_view text) {
  const std::string s = trim(text);
  if (s.rfind("theta=", 0) == 0) return polar1(2.0 * to_real(s.substr(6)));
  const auto parts = split(s, ',');
  if (parts.size() != 2) throw ParseError("eta must be 're,im' or 'theta=<radians>'");
  return unimodular(cplx(to_real(parts[0]), to_real(parts[1])), "eta");
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  for (const std::string& item : split(text, ',')) {
    if (!item.empty()) out.push_back(to_real(item));
  }
  if (out.empty()) throw ParseError("empty list");
  return out;
}

}  // namespace hshear
