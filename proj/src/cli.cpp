#include "qzero/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "qzero/error.hpp"
#include "qzero/report_io.hpp"

namespace qzero::cli {

namespace {

using io::Json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raw option text, bound per subcommand; numbers are parsed only after the
// working precision is set.
class Args {
 public:
  void bind(CLI::App* app, const std::string& name, const std::string& help) {
    app->add_option("--" + name, values_[name], help)->delimiter(',')->expected(1)->allow_extra_args(false);
  }

  bool has(const std::string& name) const {
    const auto it = values_.find(name);
    return it != values_.end() && !it->second.empty();
  }

  const std::string& text(const std::string& name) const {
    const auto& v = list(name);
    if (v.size() != 1) throw UsageError("--" + name + " takes a single value");
    return v.front();
  }

  Real real(const std::string& name) const { return parse_number(name, text(name)); }
  QParameter q(const std::string& name) const { return QParameter(real(name)); }
  Real real_or(const std::string& name, const Real& fallback) const { return has(name) ? real(name) : fallback; }

  long integer(const std::string& name) const { return parse_integer(name, text(name)); }
  std::size_t count(const std::string& name) const {
    const long v = integer(name);
    if (v < 0) throw UsageError("--" + name + " must be nonnegative");
    return static_cast<std::size_t>(v);
  }

  std::vector<Real> reals(const std::string& name) const {
    std::vector<Real> out;
    if (!has(name)) return out;
    for (const auto& s : list(name)) out.push_back(parse_number(name, s));
    return out;
  }
  std::vector<int> integers(const std::string& name) const {
    std::vector<int> out;
    if (!has(name)) return out;
    for (const auto& s : list(name)) out.push_back(static_cast<int>(parse_integer(name, s)));
    return out;
  }
  std::vector<QParameter> qs(const std::string& name) const {
    std::vector<QParameter> out;
    for (const auto& x : reals(name)) out.emplace_back(x);
    return out;
  }

 private:
  const std::vector<std::string>& list(const std::string& name) const {
    if (!has(name)) throw UsageError("missing --" + name);
    return values_.at(name);
  }

  static Real parse_number(const std::string& name, const std::string& s) {
    try {
      return parse_real(s);
    } catch (const Error&) {
      throw UsageError("--" + name + ": not a number: " + s);
    }
  }

  static long parse_integer(const std::string& name, const std::string& s) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw UsageError("--" + name + ": not an integer: " + s);
    return v;
  }

  std::map<std::string, std::vector<std::string>> values_;
};

struct Rendered {
  Json json;
  std::string csv;
  std::string text;
  std::optional<ZeroReport> plot;
  int code = kPass;
};

void bind_family(CLI::App* app, Args& args) {
  args.bind(app, "family", "aq | mixed | hyper | ratio | rs | sw");
  args.bind(app, "alpha", "exponent of the q^{alpha k^2} weight");
  args.bind(app, "a", "aq: parameter a; ratio: list a_i");
  args.bind(app, "b", "ratio: list b_j");
  args.bind(app, "q", "base q in (0, 1)");
  args.bind(app, "l", "mixed, hyper: list l_j");
  args.bind(app, "qj", "mixed: list q_j");
  args.bind(app, "nu", "mixed, hyper: list nu_r");
  args.bind(app, "qr", "mixed: list q_r");
  args.bind(app, "x", "rs, sw: x");
  args.bind(app, "y", "rs, sw: y");
  args.bind(app, "start", "ratio: first nonzero index K");
}

CoefficientFamily family_from(const Args& args, bool alternating) {
  const std::string& name = args.text("family");
  if (name == "aq") return AqAlpha(args.real("alpha"), args.real("a"), args.q("q"));
  if (name == "mixed" || name == "mixedq") {
    return MixedQ(args.real("alpha"), args.q("q"), args.integers("l"), args.qs("qj"), args.reals("nu"), args.qs("qr"));
  }
  if (name == "hyper") return HyperLimit(args.integers("l"), args.reals("nu"));
  if (name == "ratio" || name == "ratioquad") {
    return RatioQuad(args.real("alpha"), args.reals("a"), args.reals("b"), args.q("q"),
                     args.has("start") ? args.count("start") : 0);
  }
  if (name == "rs") return RogersSzegoSeries(args.real("alpha"), args.real("x"), args.real("y"), args.q("q"));
  if (name == "sw") {
    return StieltjesWigertSeries(args.real("alpha"), args.real("x"), args.real("y"), args.q("q"), alternating);
  }
  throw UsageError("unknown family '" + name + "'");
}

HalfAxis half_from(const Args& args) {
  if (!args.has("half")) return HalfAxis::kNegative;
  const std::string& h = args.text("half");
  if (h == "negative") return HalfAxis::kNegative;
  if (h == "positive") return HalfAxis::kPositive;
  throw UsageError("--half must be negative or positive");
}

Complex complex_from(const Args& args, const std::string& re, const std::string& im) {
  return Complex(args.real_or(re, Real(0)), args.real_or(im, Real(0)));
}

int zero_report_code(const ZeroReport& r) {
  if (r.confined) return kPass;
  return r.certificate == Certificate::kRigorous ? kClaimFailed : kInconclusive;
}

Rendered render(const ZeroReport& r) {
  return {io::to_json(r), io::to_csv(r), io::to_text(r), r, zero_report_code(r)};
}

Rendered cmd_eval(const Args& args, bool alternating) {
  const CoefficientFamily fam = family_from(args, alternating);
  const Real eps = args.real_or("eps", pow10(-static_cast<int>(current_precision().decimal_digits())));
  const Complex z = complex_from(args, "z", "zi");
  if (!args.has("z")) throw UsageError("missing --z");
  const Complex value = args.has("zi") ? evaluate(fam, z, eps) : Complex(evaluate(fam, z.re, eps));
  Rendered r;
  r.json["family"] = io::to_json(fam);
  r.json["z"] = io::to_json(z);
  r.json["eps"] = io::to_json(eps);
  r.json["value"] = io::to_json(value);
  r.csv = "re,im\n" + to_decimal(value.re) + "," + to_decimal(value.im) + "\n";
  r.text = io::compact(value) + "\n";
  return r;
}

Rendered cmd_zeros(const Args& args, bool alternating) {
  const CoefficientFamily fam = family_from(args, alternating);
  const Real eps = args.real_or("eps", current_precision().check_tolerance());
  const HalfAxis half = half_from(args);
  if (args.has("zeros") == args.has("radius")) throw UsageError("give exactly one of --zeros and --radius");
  const ZeroReport report = args.has("zeros") ? leading_zeros(fam, half, args.count("zeros"), eps)
                                              : axis_confinement(fam, args.real("radius"), half, eps);
  return render(report);
}

Rendered cmd_order(const Args& args, bool alternating) {
  const CoefficientFamily fam = family_from(args, alternating);
  const std::size_t K = args.has("K") ? args.count("K") : 500;
  const Real estimate = order_estimate(fam, K);
  Rendered r;
  r.json["family"] = io::to_json(fam);
  r.json["K"] = K;
  r.json["estimate"] = io::to_json(estimate);
  r.csv = "K,estimate\n" + std::to_string(K) + "," + to_decimal(estimate) + "\n";
  r.text = io::compact(estimate) + "\n";
  return r;
}

std::vector<Rational> read_sequence(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IOFailure, "cannot read " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
  if (!doc.is_array()) throw UsageError(path + ": expected a JSON array of decimal strings");
  std::vector<std::string> texts;
  for (const auto& x : doc) {
    if (x.is_string()) texts.push_back(x.get<std::string>());
    else if (x.is_number_integer()) texts.push_back(x.dump());
    else throw UsageError(path + ": entries must be decimal strings");
  }
  return parse_rational_sequence(texts);
}

Rendered cmd_pfcheck(const Args& args, bool alternating) {
  const Real tol = args.real_or("tol", current_precision().check_tolerance());
  PFVerdict v;
  Json sequence = Json::array();
  if (args.has("seq")) {
    const auto seq = read_sequence(args.text("seq"));
    const unsigned window = args.has("window") ? static_cast<unsigned>(args.count("window"))
                                               : static_cast<unsigned>(seq.size() + 6);
    const unsigned order = args.has("order") ? static_cast<unsigned>(args.count("order")) : window;
    v = is_pf_window(seq, window, order, tol);
    for (const auto& x : seq) sequence.push_back(x.str());
  } else if (args.has("family")) {
    const CoefficientFamily fam = family_from(args, alternating);
    const unsigned window = args.has("window") ? static_cast<unsigned>(args.count("window")) : 10;
    const unsigned order = args.has("order") ? static_cast<unsigned>(args.count("order")) : 4;
    v = is_pf_window(family_sequence(fam), window, order, tol);
    for (unsigned k = 0; k < window; ++k) sequence.push_back(to_decimal(coefficient(fam, k)));
  } else {
    throw UsageError("pfcheck needs --seq or --family");
  }
  Rendered r;
  r.json["sequence"] = std::move(sequence);
  r.json["tolerance"] = io::to_json(tol);
  r.json["verdict"] = io::to_json(v);
  r.csv = io::to_csv(v);
  r.text = io::to_text(v);
  r.code = v.is_pf ? kPass : kClaimFailed;
  return r;
}

IdentityReport identity_from(const Args& args) {
  const std::string& name = args.text("name");
  const Real eps = args.real_or("eps", current_precision().check_tolerance());
  if (name == "q-binomial") {
    return q_binomial_identity(complex_from(args, "a", "ai"), complex_from(args, "x", "xi"), args.q("q"), eps);
  }
  if (name == "collapse") {
    return collapse_check(static_cast<int>(args.integer("l")), complex_from(args, "z", "zi"), args.q("q"), eps);
  }
  if (name == "rs-gf") {
    return rs_generating_function(args.real("x"), args.real("y"), args.q("q"), complex_from(args, "t", "ti"), eps);
  }
  if (name == "sw-gf") {
    return sw_generating_function(args.real("x"), args.real("y"), args.q("q"), complex_from(args, "t", "ti"), eps);
  }
  if (name == "aq-special") return aq_special_cases(args.count("n"), complex_from(args, "z", "zi"), args.q("q"), eps);
  if (name == "hopital") {
    return hopital_limits(static_cast<int>(args.integer("l")), args.real("nu"), args.count("k"),
                          static_cast<int>(args.integer("j")));
  }
  if (name == "pochhammer") return pochhammer_inequality(args.count("l"), args.q("q"));
  if (name == "hn-bound") {
    return hn_bound_check(args.real("x"), args.real("y"), args.q("q"), args.has("nmax") ? args.count("nmax") : 200);
  }
  throw UsageError("unknown identity '" + name + "'");
}

Rendered cmd_identity(const Args& args) {
  const IdentityReport report = identity_from(args);
  Rendered r;
  r.json = io::to_json(report);
  r.csv = io::to_csv(std::vector<IdentityReport>{report});
  r.text = io::to_text(std::vector<IdentityReport>{report});
  r.code = report.pass ? kPass : kClaimFailed;
  return r;
}

Rendered cmd_verify(const Args& args) {
  SuiteParams p;
  if (args.has("q")) p.q = args.real("q");
  if (args.has("alpha")) p.alpha = args.real("alpha");
  if (args.has("l")) p.l = static_cast<int>(args.integer("l"));
  if (args.has("x")) p.x = args.real("x");
  if (args.has("y")) p.y = args.real("y");
  if (args.has("zeros")) p.zeros = args.count("zeros");
  const SuiteResult result = run_suite(args.text("theorem"), p);
  Rendered r;
  r.json = io::to_json(result);
  r.csv = io::to_csv(result);
  r.text = io::to_text(result);
  if (!result.zero_reports.empty()) r.plot = result.zero_reports.front();
  switch (result.verdict()) {
    case Verdict::kPass:
      r.code = kPass;
      break;
    case Verdict::kFail:
      r.code = kClaimFailed;
      break;
    case Verdict::kInconclusive:
      r.code = kInconclusive;
      break;
  }
  return r;
}

void write_output(const Rendered& r, const std::string& format, const std::string& path, std::ostream& out) {
  std::string body;
  if (format == "json") body = r.json.dump(2) + "\n";
  else if (format == "csv") body = r.csv;
  else if (format == "text") body = r.text;
  else if (format == "svg") {
    if (!r.plot) throw UsageError("svg output needs a zero report");
    if (!path.empty()) {
      io::emit_svg(*r.plot, path);
      return;
    }
    body = io::render_svg(*r.plot);
  }
  if (path.empty()) {
    out << body;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::IOFailure, "cannot open " + path);
  file << body;
  if (!file.flush()) throw Error(ErrorKind::IOFailure, "cannot write " + path);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"High-precision q-series zeros, PF sequences and identity checks", "qzero"};
  app.fallthrough();
  app.require_subcommand(1);

  unsigned digits = 0;
  std::string out_path;
  std::string format;
  bool alternating = false;
  Args args;
  app.add_option("--digits", digits, "decimal digits (default $QZERO_DIGITS or 50)");
  app.add_option("--out", out_path, "write the report here instead of stdout");
  app.add_option("--format", format, "json | csv | svg | text")
      ->check(CLI::IsMember({"json", "csv", "svg", "text"}));

  auto* eval = app.add_subcommand("eval", "evaluate a family at z");
  bind_family(eval, args);
  args.bind(eval, "z", "real part of z");
  args.bind(eval, "zi", "imaginary part of z");
  args.bind(eval, "eps", "truncation tolerance");
  eval->add_flag("--alternating", alternating, "sw: use f(-z)");

  auto* zeros = app.add_subcommand("zeros", "certify zeros in a disk");
  bind_family(zeros, args);
  args.bind(zeros, "zeros", "the first m zeros on the half-axis");
  args.bind(zeros, "radius", "disk radius");
  args.bind(zeros, "half", "negative | positive");
  args.bind(zeros, "eps", "truncation tolerance");
  zeros->add_flag("--alternating", alternating, "sw: use f(-z)");

  auto* pfcheck = app.add_subcommand("pfcheck", "Toeplitz minor test of a sequence");
  bind_family(pfcheck, args);
  args.bind(pfcheck, "seq", "JSON file holding an array of decimal strings");
  args.bind(pfcheck, "window", "window size");
  args.bind(pfcheck, "order", "largest minor order");
  args.bind(pfcheck, "tol", "relative minor tolerance");
  pfcheck->add_flag("--alternating", alternating, "sw: use f(-z)");

  auto* identity = app.add_subcommand("identity", "check one identity or inequality");
  for (const char* name : {"name", "a", "ai", "x", "xi", "y", "q", "z", "zi", "t", "ti", "l", "n", "nu", "k", "j",
                           "nmax", "eps"}) {
    args.bind(identity, name, "");
  }

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  for (const char* name : {"theorem", "q", "alpha", "l", "x", "y", "zeros"}) args.bind(verify, name, "");

  auto* order = app.add_subcommand("order", "estimate the order of a family");
  bind_family(order, args);
  args.bind(order, "K", "largest coefficient index");
  order->add_flag("--alternating", alternating, "sw: use f(-z)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsageError;
  }

  try {
    const PrecisionContext ctx = digits > 0 ? PrecisionContext(digits) : PrecisionContext::from_environment();
    ScopedPrecision scope(ctx);
    Rendered r;
    std::string fallback = "json";
    if (eval->parsed()) {
      r = cmd_eval(args, alternating);
      fallback = "text";
    } else if (zeros->parsed()) {
      r = cmd_zeros(args, alternating);
    } else if (pfcheck->parsed()) {
      r = cmd_pfcheck(args, alternating);
    } else if (identity->parsed()) {
      r = cmd_identity(args);
    } else if (verify->parsed()) {
      r = cmd_verify(args);
    } else {
      r = cmd_order(args, alternating);
    }
    write_output(r, format.empty() ? fallback : format, out_path, out);
    return r.code;
  } catch (const UsageError& e) {
    err << "qzero: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "qzero: " << e.what() << "\n";
    return is_inconclusive(e.kind()) ? kInconclusive : kUsageError;
  } catch (const std::exception& e) {
    err << "qzero: " << e.what() << "\n";
    return kInconclusive;
  }
}

}  // namespace qzero::cli
