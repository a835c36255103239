#include "qzero/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qzero/error.hpp"

namespace qzero::io {

namespace {

template <class... F>
struct Overloaded : F... {
  using F::operator()...;
};
template <class... F>
Overloaded(F...) -> Overloaded<F...>;

template <class T, class Fn>
Json array_of(const std::vector<T>& xs, Fn&& fn) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(fn(x));
  return out;
}

Json reals(const std::vector<Real>& xs) {
  return array_of(xs, [](const Real& x) { return to_json(x); });
}

Json qs(const std::vector<QParameter>& xs) {
  return array_of(xs, [](const QParameter& q) { return to_json(q.value()); });
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + csv_field(fields[i]);
  return out + "\n";
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string witness_text(const MinorWitness& w) {
  auto list = [](const std::vector<unsigned>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + std::to_string(xs[i]);
    return s;
  };
  return "rows {" + list(w.rows) + "} cols {" + list(w.cols) + "}";
}

}  // namespace

Json to_json(const Real& x) { return to_decimal(x); }

Json to_json(const Complex& z) {
  Json out;
  out["re"] = to_json(z.re);
  out["im"] = to_json(z.im);
  return out;
}

Json to_json(const CoefficientFamily& fam) {
  Json out;
  out["family"] = family_tag(fam);
  std::visit(Overloaded{
                 [&](const AqAlpha& f) {
                   out["alpha"] = to_json(f.alpha);
                   out["a"] = to_json(f.a);
                   out["q"] = to_json(f.q.value());
                 },
                 [&](const MixedQ& f) {
                   out["alpha"] = to_json(f.alpha);
                   out["q"] = to_json(f.q.value());
                   out["l"] = f.l;
                   out["qj"] = qs(f.qj);
                   out["nu"] = reals(f.nu);
                   out["qr"] = qs(f.qr);
                 },
                 [&](const HyperLimit& f) {
                   out["l"] = f.l;
                   out["nu"] = reals(f.nu);
                 },
                 [&](const RatioQuad& f) {
                   out["alpha"] = to_json(f.alpha);
                   out["a"] = reals(f.a);
                   out["b"] = reals(f.b);
                   out["q"] = to_json(f.q.value());
                   out["start"] = f.start;
                 },
                 [&](const RogersSzegoSeries& f) {
                   out["alpha"] = to_json(f.alpha);
                   out["x"] = to_json(f.x);
                   out["y"] = to_json(f.y);
                   out["q"] = to_json(f.q.value());
                 },
                 [&](const StieltjesWigertSeries& f) {
                   out["alpha"] = to_json(f.alpha);
                   out["x"] = to_json(f.x);
                   out["y"] = to_json(f.y);
                   out["q"] = to_json(f.q.value());
                   out["alternating"] = f.alternating;
                 },
             },
             fam);
  return out;
}

Json to_json(const SeriesTruncation& t) {
  Json out;
  out["N"] = t.N;
  out["radius"] = to_json(t.radius);
  out["tail_bound"] = to_json(t.tail_bound);
  return out;
}

Json to_json(const ZeroReport& r) {
  Json out;
  out["source"] = r.source;
  out["family"] = r.family ? to_json(*r.family) : Json();
  if (!r.polynomial.empty()) out["polynomial"] = reals(r.polynomial);
  out["half_axis"] = to_string(r.half_axis);
  out["disk_radius"] = to_json(r.disk_radius);
  out["winding_count"] = r.winding_count;
  out["origin_multiplicity"] = r.origin_multiplicity;
  out["bracket_count"] = r.bracket_count;
  out["confined"] = r.confined;
  out["certificate"] = to_string(r.certificate);
  out["truncation"] = to_json(r.truncation);
  out["zeros"] = array_of(r.zeros, [](const ZeroEntry& z) {
    Json e;
    e["location"] = to_json(z.location);
    e["enclosure_radius"] = to_json(z.enclosure_radius);
    e["classification"] = to_string(z.classification);
    e["imag_crosscheck"] = to_json(z.imag_crosscheck);
    e["certified"] = z.certified;
    return e;
  });
  return out;
}

Json to_json(const IdentityReport& r) {
  Json out;
  out["name"] = r.name;
  out["lhs"] = to_json(r.lhs);
  out["rhs"] = to_json(r.rhs);
  out["abs_residual"] = to_json(r.abs_residual);
  out["tolerance"] = to_json(r.tolerance);
  out["pass"] = r.pass;
  out["variant"] = r.variant;
  out["detail"] = r.detail;
  return out;
}

Json to_json(const PFVerdict& v) {
  Json out;
  out["is_pf"] = v.is_pf;
  out["order_tested"] = v.order_tested;
  out["window_tested"] = v.window_tested;
  if (v.witness) {
    Json w;
    w["rows"] = v.witness->rows;
    w["cols"] = v.witness->cols;
    w["value"] = to_json(v.witness->value);
    out["witness"] = std::move(w);
  } else {
    out["witness"] = Json();
  }
  return out;
}

Json to_json(const SuiteResult& r) {
  Json out;
  out["suite"] = r.key;
  out["verdict"] = to_string(r.verdict());
  out["checks"] = array_of(r.checks, [](const SuiteCheck& c) {
    Json e;
    e["name"] = c.name;
    e["verdict"] = to_string(c.verdict);
    e["detail"] = c.detail;
    return e;
  });
  out["zero_reports"] = array_of(r.zero_reports, [](const ZeroReport& z) { return to_json(z); });
  out["identity_reports"] = array_of(r.identity_reports, [](const IdentityReport& i) { return to_json(i); });
  out["pf_verdicts"] = array_of(r.pf_verdicts, [](const NamedVerdict& v) {
    Json e;
    e["name"] = v.name;
    e["verdict"] = to_json(v.verdict);
    return e;
  });
  return out;
}

std::string compact(const Real& x) {
  std::string s = to_decimal(x);
  const auto e = s.find('e');
  if (e == std::string::npos) return s;
  std::string mantissa = s.substr(0, e), exponent = s.substr(e);
  if (mantissa.find('.') != std::string::npos) {
    while (mantissa.back() == '0') mantissa.pop_back();
    if (mantissa.back() == '.') mantissa.pop_back();
  }
  return exponent == "e+00" ? mantissa : mantissa + exponent;
}

std::string compact(const Complex& z) {
  if (z.im == 0) return compact(z.re);
  const std::string im = compact(boost::multiprecision::abs(z.im));
  return compact(z.re) + (z.im < 0 ? " - " : " + ") + im + "i";
}

std::string to_csv(const ZeroReport& r) {
  std::string out = csv_row({"index", "re", "im", "enclosure_radius", "classification", "imag_crosscheck", "certified"});
  for (std::size_t i = 0; i < r.zeros.size(); ++i) {
    const auto& z = r.zeros[i];
    out += csv_row({std::to_string(i), to_decimal(z.location.re), to_decimal(z.location.im),
                    to_decimal(z.enclosure_radius), to_string(z.classification), to_decimal(z.imag_crosscheck),
                    yes_no(z.certified)});
  }
  return out;
}

std::string to_csv(const std::vector<IdentityReport>& rs) {
  std::string out =
      csv_row({"name", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_residual", "tolerance", "pass", "variant"});
  for (const auto& r : rs) {
    out += csv_row({r.name, to_decimal(r.lhs.re), to_decimal(r.lhs.im), to_decimal(r.rhs.re), to_decimal(r.rhs.im),
                    to_decimal(r.abs_residual), to_decimal(r.tolerance), yes_no(r.pass), r.variant});
  }
  return out;
}

std::string to_csv(const PFVerdict& v) {
  std::string out = csv_row({"is_pf", "order_tested", "window_tested", "witness", "witness_value"});
  out += csv_row({yes_no(v.is_pf), std::to_string(v.order_tested), std::to_string(v.window_tested),
                  v.witness ? witness_text(*v.witness) : "", v.witness ? to_decimal(v.witness->value) : ""});
  return out;
}

std::string to_csv(const SuiteResult& r) {
  std::string out = csv_row({"suite", "check", "verdict", "detail"});
  for (const auto& c : r.checks) out += csv_row({r.key, c.name, to_string(c.verdict), c.detail});
  return out;
}

std::string to_text(const ZeroReport& r) {
  std::ostringstream os;
  os << r.source << " on |z| < " << compact(r.disk_radius) << " (" << to_string(r.half_axis) << " half-axis)\n"
     << "winding " << r.winding_count << ", brackets " << r.bracket_count << ", "
     << (r.confined ? "confined" : "not confined") << ", certificate " << to_string(r.certificate) << "\n";
  if (r.origin_multiplicity > 0) os << "zero of order " << r.origin_multiplicity << " at the origin\n";
  for (std::size_t i = 0; i < r.zeros.size(); ++i) {
    const auto& z = r.zeros[i];
    os << "  " << i + 1 << "  " << compact(z.location) << "  +- " << to_decimal(z.enclosure_radius, 3) << "  "
       << to_string(z.classification) << "\n";
  }
  return os.str();
}

std::string to_text(const std::vector<IdentityReport>& rs) {
  std::ostringstream os;
  for (const auto& r : rs) {
    os << (r.pass ? "pass" : "FAIL") << "  " << r.name << "  residual " << to_decimal(r.abs_residual, 3)
       << "  tolerance " << to_decimal(r.tolerance, 3);
    if (!r.variant.empty()) os << "  variant " << r.variant;
    os << "\n";
  }
  return os.str();
}

std::string to_text(const PFVerdict& v) {
  std::ostringstream os;
  os << (v.is_pf ? "PF" : "not PF") << " up to order " << v.order_tested << " in a " << v.window_tested << "x"
     << v.window_tested << " window\n";
  if (v.witness) os << "negative minor " << witness_text(*v.witness) << " = " << compact(v.witness->value) << "\n";
  return os.str();
}

std::string to_text(const SuiteResult& r) {
  std::ostringstream os;
  os << r.key << ": " << to_string(r.verdict()) << "\n";
  for (const auto& c : r.checks) os << "  " << to_string(c.verdict) << "  " << c.name << "  " << c.detail << "\n";
  return os.str();
}

std::string render_svg(const ZeroReport& r) {
  constexpr double kSize = 600, kCenter = 300, kPlot = 250;
  const double radius = static_cast<double>(r.disk_radius);
  // radii are log-scaled so that geometrically spaced zeros stay apart
  double unit = radius / 100;
  for (const auto& z : r.zeros) {
    const double m = static_cast<double>(abs(z.location));
    if (m > 0) unit = std::min(unit, m / 2);
  }
  const double span = std::log1p(radius / unit);
  auto px = [&](const Complex& z, double& x, double& y) {
    const double re = static_cast<double>(z.re), im = static_cast<double>(z.im);
    const double m = std::hypot(re, im);
    const double s = m > 0 ? kPlot * std::log1p(m / unit) / span / m : 0;
    x = kCenter + s * re;
    y = kCenter - s * im;
  };
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize + 60
     << "\" viewBox=\"0 0 " << kSize << " " << kSize + 60 << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<circle class=\"disk\" cx=\"300\" cy=\"300\" r=\"" << kPlot
     << "\" fill=\"none\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n"
     << "<line class=\"real-axis\" x1=\"20\" y1=\"300\" x2=\"580\" y2=\"300\" stroke=\"#444\"/>\n"
     << "<line class=\"imag-axis\" x1=\"300\" y1=\"20\" x2=\"300\" y2=\"580\" stroke=\"#ccc\"/>\n";
  for (const auto& z : r.zeros) {
    double x = 0, y = 0;
    px(z.location, x, y);
    const char* colour = z.classification == ZeroClass::kComplexPair ? "#c0392b" : "#1f5fa8";
    os << "<circle class=\"zero\" cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"4\" fill=\"" << colour
       << "\" data-re=\"" << compact(z.location.re) << "\" data-im=\"" << compact(z.location.im) << "\"/>\n";
  }
  os << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"13\">\n"
     << "<text x=\"20\" y=\"" << kSize + 10 << "\">" << r.source << ": " << r.zeros.size() << " zeros in |z| &lt; "
     << to_decimal(r.disk_radius, 4) << ", " << (r.confined ? "confined" : "not confined") << "</text>\n"
     << "<text x=\"20\" y=\"" << kSize + 30 << "\">certificate: " << to_string(r.certificate)
     << "; radial scale log(1 + |z|/" << to_decimal(Real(unit), 3) << ")</text>\n"
     << "</g>\n</svg>\n";
  return os.str();
}

void emit_svg(const ZeroReport& r, const std::string& path) {
  if (r.zeros.empty() && r.winding_count == 0) throw Error(ErrorKind::InvalidParameter, "empty zero report");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IOFailure, "cannot open " + path);
  out << render_svg(r);
  out.close();
  if (!out) throw Error(ErrorKind::IOFailure, "cannot write " + path);
}

}  // namespace qzero::io
