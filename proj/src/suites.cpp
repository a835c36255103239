#include "qzero/suites.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "qzero/error.hpp"

namespace qzero {

namespace bmp = boost::multiprecision;

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kFail:
      return "fail";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "?";
}

Verdict SuiteResult::verdict() const {
  bool inconclusive = false;
  for (const auto& c : checks) {
    if (c.verdict == Verdict::kFail) return Verdict::kFail;
    inconclusive = inconclusive || c.verdict == Verdict::kInconclusive;
  }
  return inconclusive ? Verdict::kInconclusive : Verdict::kPass;
}

const std::vector<std::string>& suite_keys() {
  static const std::vector<std::string> keys = {"t1i",           "t1ii",           "t1iii",   "t2",
                                                "tt1-rs",        "tt1-sw",         "klv-threshold",
                                                "identities-all", "pf-all",         "order-all"};
  return keys;
}

AqAlpha shifted_aq_family(int l, const Real& alpha, const QParameter& q) {
  return AqAlpha(alpha, bmp::pow(q.value(), l), q);
}

ZeroReport leading_zeros(const CoefficientFamily& fam, HalfAxis half, std::size_t m, const Real& eps) {
  if (m == 0) throw Error(ErrorKind::InvalidParameter, "need at least one zero");
  Real radius;
  try {
    const auto real = real_axis_zeros(fam, half, m + 1, eps);
    radius = bmp::sqrt(bmp::abs(real[m - 1].location) * bmp::abs(real[m].location));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotEnoughZerosFound) throw;
    // the (m+1)-th zero lies past the search limit: extrapolate the last gap
    const auto real = real_axis_zeros(fam, half, m, eps);
    const Real last = bmp::abs(real[m - 1].location);
    radius = m > 1 ? last * bmp::sqrt(last / bmp::abs(real[m - 2].location)) : 2 * last;
  }
  return axis_confinement(fam, radius, half, eps);
}

std::vector<std::vector<Rational>> random_pf_corpus(std::size_t count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> length(1, 6), tenths(1, 40);
  std::bernoulli_distribution zero(0.2);
  std::vector<std::vector<Rational>> out;
  while (out.size() < count) {
    std::vector<Rational> s(static_cast<std::size_t>(length(rng)));
    bool any = false;
    for (auto& a : s) {
      a = zero(rng) ? Rational(0) : Rational(tenths(rng), 10);
      any = any || a != 0;
    }
    if (any) out.push_back(std::move(s));
  }
  return out;
}

namespace {

Real eps() { return current_precision().check_tolerance(); }

std::string sci(const Real& x) { return to_decimal(x, 4); }

void add(SuiteResult& out, std::string name, bool ok, std::string detail) {
  out.checks.push_back({std::move(name), ok ? Verdict::kPass : Verdict::kFail, std::move(detail)});
}

// Runs `body`, turning certificate failures into an inconclusive check.
void guarded(SuiteResult& out, const std::string& name, const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    if (!is_inconclusive(e.kind())) throw;
    out.checks.push_back({name, Verdict::kInconclusive, e.what()});
  }
}

// The first m zeros on the half-axis, all of class `expected`, confined.
void zero_instance(SuiteResult& out, const std::string& name, const CoefficientFamily& fam, HalfAxis half,
                   std::size_t m, ZeroClass expected) {
  guarded(out, name, [&] {
    ZeroReport report = leading_zeros(fam, half, m, eps());
    bool classes = report.zeros.size() == m;
    Real worst(0);
    for (const auto& z : report.zeros) {
      classes = classes && z.classification == expected;
      worst = std::max(worst, z.imag_crosscheck / abs(z.location));
    }
    const bool ok = report.confined && classes && worst < pow10(-25);
    std::ostringstream detail;
    detail << "zeros=" << report.zeros.size() << " winding=" << report.winding_count
           << " brackets=" << report.bracket_count << " max|Im|/|z|=" << sci(worst)
           << " certificate=" << to_string(report.certificate);
    Verdict v = ok ? Verdict::kPass : Verdict::kFail;
    if (report.certificate != Certificate::kRigorous) v = Verdict::kInconclusive;
    out.checks.push_back({name, v, detail.str()});
    out.zero_reports.push_back(std::move(report));
  });
}

std::size_t zeros_or(const SuiteParams& p, std::size_t fallback) { return p.zeros.value_or(fallback); }

bool overridden(const SuiteParams& p) { return p.q || p.alpha || p.l || p.x || p.y; }

SuiteResult shifted_aq_suite(const SuiteParams& p) {
  SuiteResult out;
  struct Instance {
    int l;
    Real alpha;
    Real q;
  };
  std::vector<Instance> grid;
  if (overridden(p)) {
    grid.push_back({p.l.value_or(2), p.alpha.value_or(Real(1)), p.q.value_or(Real("0.5"))});
  } else {
    grid = {{2, Real(1), Real("0.5")}, {3, Real(1), Real("0.5")}, {2, Real("0.5"), Real("0.3")}};
  }
  for (const auto& g : grid) {
    const AqAlpha fam = shifted_aq_family(g.l, g.alpha, QParameter(g.q));
    zero_instance(out, "l=" + std::to_string(g.l) + " alpha=" + sci(g.alpha) + " q=" + sci(g.q), fam,
                  HalfAxis::kNegative, zeros_or(p, 8), ZeroClass::kNegativeReal);
  }
  if (out.zero_reports.empty()) return out;

  // finitely many zeros cannot show infinitely many; the count must keep growing
  const ZeroReport& first = out.zero_reports.front();
  const CoefficientFamily& fam = *first.family;
  guarded(out, "winding grows over 3 doublings", [&] {
    std::vector<long> counts;
    Real radius = first.disk_radius;
    for (int i = 0; i <= 3; ++i, radius *= 2) counts.push_back(winding_count(fam, Complex(), radius, eps()).count);
    const bool ok = std::is_sorted(counts.begin(), counts.end()) && counts.back() > counts.front();
    std::string detail = "counts=";
    for (long c : counts) detail += std::to_string(c) + " ";
    add(out, "winding grows over 3 doublings", ok, detail);
  });
  return out;
}

SuiteResult mixed_suite(const SuiteParams& p) {
  SuiteResult out;
  const QParameter q(p.q.value_or(Real("0.5")));
  const MixedQ fam(p.alpha.value_or(Real(1)), q, {p.l.value_or(2)}, {q}, {Real(0)}, {q});
  zero_instance(out, "mixed l=[2] nu=[0]", fam, HalfAxis::kNegative, zeros_or(p, 5), ZeroClass::kNegativeReal);
  return out;
}

SuiteResult hyper_suite(const SuiteParams& p) {
  SuiteResult out;
  const HyperLimit fam({p.l.value_or(2)}, {Real(0)});
  zero_instance(out, "hyper l=[2] nu=[0]", fam, HalfAxis::kNegative, zeros_or(p, 5), ZeroClass::kNegativeReal);
  return out;
}

SuiteResult ratio_suite(const SuiteParams& p) {
  SuiteResult out;
  const Real alpha = p.alpha.value_or(Real(1));
  const QParameter q(p.q.value_or(Real("0.4")));
  const RatioQuad base(alpha, {Real("2.5")}, {Real("1.5")}, q, 0);
  guarded(out, "K0", [&] {
    constexpr std::size_t kHorizon = 100;
    const std::size_t K0 = theorem2_K0(base, kHorizon);
    std::size_t covered = K0;
    while (!(log_concavity_lower_bound(base, covered) > 4)) ++covered;
    bool ratios = true;
    for (std::size_t k = K0; k <= std::max(covered, K0 + kHorizon); ++k) ratios = ratios && log_concavity_ratio(base, k) > 4;
    add(out, "K0 lower bound", log_concavity_lower_bound(base, covered) > 4,
        "K0=" + std::to_string(K0) + " bound at " + std::to_string(covered) + " = " +
            sci(log_concavity_lower_bound(base, covered)));
    add(out, "log-concavity ratio > 4 from K0", ratios,
        "checked k in [" + std::to_string(K0) + ", " + std::to_string(std::max(covered, K0 + kHorizon)) + "]");

    const RatioQuad fam(alpha, {Real("2.5")}, {Real("1.5")}, q, K0);
    zero_instance(out, "ratio start=K0", fam, HalfAxis::kNegative, zeros_or(p, 6), ZeroClass::kNegativeReal);
    const Real order = order_estimate(fam, 500);
    add(out, "order below 0.05", order < Real("0.05"), "estimate=" + sci(order));
  });
  return out;
}

SuiteResult rogers_szego_suite(const SuiteParams& p) {
  SuiteResult out;
  const RogersSzegoSeries fam(p.alpha.value_or(Real(1)), p.x.value_or(Real("0.3")), p.y.value_or(Real("0.7")),
                              QParameter(p.q.value_or(Real("0.5"))));
  zero_instance(out, "rogers-szego", fam, HalfAxis::kNegative, zeros_or(p, 6), ZeroClass::kNegativeReal);
  return out;
}

SuiteResult stieltjes_wigert_suite(const SuiteParams& p) {
  SuiteResult out;
  const Real alpha = p.alpha.value_or(Real("0.5"));
  const Real x = p.x.value_or(Real("-0.3")), y = p.y.value_or(Real("-0.4"));
  const QParameter q(p.q.value_or(Real("0.5")));
  zero_instance(out, "stieltjes-wigert", StieltjesWigertSeries(alpha, x, y, q), HalfAxis::kPositive,
                zeros_or(p, 6), ZeroClass::kPositiveReal);
  zero_instance(out, "stieltjes-wigert alternating", StieltjesWigertSeries(alpha, x, y, q, true),
                HalfAxis::kNegative, zeros_or(p, 6), ZeroClass::kNegativeReal);
  return out;
}

SuiteResult realness_threshold_suite(const SuiteParams&) {
  SuiteResult out;
  const Real radius(20);
  for (const char* qt : {"0.5", "0.6"}) {
    const bool below = std::string(qt) == "0.5";
    const std::string name = std::string("a=q=") + qt;
    guarded(out, name, [&] {
      const QParameter q{Real(qt)};
      ZeroReport report = axis_confinement(AqAlpha(Real(1), q.value(), q), radius, HalfAxis::kNegative, eps());
      std::size_t complex_zeros = 0;
      for (const auto& z : report.zeros) complex_zeros += z.classification == ZeroClass::kComplexPair ? 1 : 0;
      const bool ok = below ? report.confined && complex_zeros == 0 : complex_zeros >= 2;
      Verdict v = ok ? Verdict::kPass : Verdict::kFail;
      if (report.certificate != Certificate::kRigorous) v = Verdict::kInconclusive;
      out.checks.push_back({name, v,
                            "zeros=" + std::to_string(report.zeros.size()) + " non-real=" +
                                std::to_string(complex_zeros) + " confined=" + (report.confined ? "yes" : "no")});
      out.zero_reports.push_back(std::move(report));
    });
  }
  return out;
}

struct Draw {
  std::mt19937_64 rng;
  explicit Draw(unsigned seed) : rng(seed) {}
  Real uniform(double lo, double hi) { return Real(std::uniform_real_distribution<double>(lo, hi)(rng)); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  Complex in_disk(double radius) { return polar(uniform(0, radius), uniform(0, 6.283185307179586)); }
};

SuiteResult identities_all(const SuiteParams&) {
  SuiteResult out;
  constexpr int kDraws = 100;
  const Real tol = eps();
  std::vector<std::vector<IdentityReport>> families(7);
  std::vector<std::string> sw_variants;
  Draw d(2024);
  for (int i = 0; i < kDraws; ++i) {
    const QParameter q(d.uniform(0.05, 0.9));
    families[0].push_back(q_binomial_identity(d.in_disk(2), d.in_disk(0.8), q, tol));
    const int l = d.integer(2, 5);
    families[1].push_back(collapse_check(l, d.in_disk(0.8) * bmp::pow(q.value(), l), q, tol));
    const Real x = d.uniform(-1.5, 1.5), y = d.uniform(-1.5, 1.5);
    const Real reach = std::max({bmp::abs(x), bmp::abs(y), Real(1)});
    families[2].push_back(rs_generating_function(x, y, q, d.in_disk(0.6) / reach, tol));
    Complex t = d.in_disk(2);
    while (abs(t - Complex(1)) < Real("0.05")) t = d.in_disk(2);
    families[3].push_back(sw_generating_function(x, y, q, t, tol));
    sw_variants.push_back(families[3].back().variant);
    families[4].push_back(hopital_limits(d.integer(2, 6), d.uniform(0, 5), static_cast<std::size_t>(d.integer(0, 8)),
                                         d.integer(12, 30)));
    families[5].push_back(pochhammer_inequality(static_cast<std::size_t>(d.integer(1, 30)), q));
    families[6].push_back(hn_bound_check(d.uniform(-3, 3), d.uniform(-3, 3), q, 200));
  }
  for (auto& reports : families) {
    std::size_t passed = 0;
    Real worst(0);
    for (const auto& r : reports) {
      passed += r.pass ? 1 : 0;
      worst = std::max(worst, r.abs_residual);
    }
    add(out, reports.front().name, passed == reports.size(),
        std::to_string(passed) + "/" + std::to_string(reports.size()) + " max residual " + sci(worst));
    for (auto& r : reports) out.identity_reports.push_back(std::move(r));
  }
  std::sort(sw_variants.begin(), sw_variants.end());
  sw_variants.erase(std::unique(sw_variants.begin(), sw_variants.end()), sw_variants.end());
  add(out, "sw generating function variant", sw_variants.size() == 1 && sw_variants[0] != "none" &&
                                                  sw_variants[0] != "both",
      "variants: " + [&] {
        std::string s;
        for (const auto& v : sw_variants) s += v + " ";
        return s;
      }());

  std::vector<std::string> conventions;
  Real worst(0);
  bool all_pass = true;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const char* z : {"0.1", "1", "5"}) {
      IdentityReport r = aq_special_cases(n, Complex(Real(z)), QParameter(Real("0.5")), tol);
      conventions.push_back(r.variant);
      worst = std::max(worst, r.abs_residual);
      all_pass = all_pass && r.pass;
      out.identity_reports.push_back(std::move(r));
    }
  }
  std::sort(conventions.begin(), conventions.end());
  conventions.erase(std::unique(conventions.begin(), conventions.end()), conventions.end());
  add(out, "aq special case convention",
      all_pass && conventions.size() == 1 && conventions[0] != "none" &&
          conventions[0].find('|') == std::string::npos,
      "pair " + conventions.front() + " max residual " + sci(worst));
  return out;
}

std::vector<Real> pf_sequence(const std::function<Real(std::size_t)>& term, std::size_t count) {
  std::vector<Real> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(term(k));
  return out;
}

void pf_instance(SuiteResult& out, const std::string& name, const std::vector<Real>& seq, unsigned window,
                 unsigned order) {
  PFVerdict v = is_pf_window(seq, window, order, eps());
  add(out, name, v.is_pf,
      v.witness ? "witness value " + sci(v.witness->value) : "order " + std::to_string(order) + " window " +
                                                                  std::to_string(window));
  out.pf_verdicts.push_back({name, std::move(v)});
}

SuiteResult pf_all(const SuiteParams&) {
  SuiteResult out;
  const QParameter half(Real("0.5"));
  const auto gaussian = pf_sequence(
      [&](std::size_t k) { return bmp::pow(half.value(), Real(k * k)) / factorial(k); }, 10);
  pf_instance(out, "q^{k^2}/k! q=0.5", gaussian, 10, 4);
  const Real smallest = smallest_minor(gaussian, 10, 4);
  add(out, "q^{k^2}/k! smallest minor", smallest >= -pow10(-40), "smallest=" + sci(smallest));

  for (const auto& [nu, qt] : {std::pair{"-0.5", "0.3"}, std::pair{"0", "0.5"}, std::pair{"2", "0.7"}}) {
    const QParameter q{Real(qt)};
    const Real shifted = bmp::pow(q.value(), Real(nu) + 1);
    pf_instance(out, std::string("zhang nu=") + nu + " q=" + qt,
                pf_sequence([&](std::size_t k) {
                  return 1 / (qpochhammer_finite(q.value(), q, k) * qpochhammer_finite(shifted, q, k));
                }, 10),
                10, 4);
  }
  for (const auto& [l, alpha, qt] : {std::tuple{2, "1", "0.5"}, std::tuple{3, "0.5", "0.3"}}) {
    const QParameter q{Real(qt)};
    const Real ql = bmp::pow(q.value(), l), a(alpha);
    pf_instance(out, "composite l=" + std::to_string(l) + " alpha=" + alpha + " q=" + qt,
                pf_sequence([&](std::size_t k) {
                  return qpochhammer_finite(ql, q, k) * bmp::pow(q.value(), a * Real(k * k)) /
                         qpochhammer_finite(q.value(), q, k);
                }, 10),
                10, 4);
  }

  // window len + 6: len + 2 is too narrow for roots close to the negative axis
  const auto corpus = random_pf_corpus(500, 20240);
  std::size_t disagreements = 0, pf = 0;
  for (const auto& s : corpus) {
    const unsigned w = static_cast<unsigned>(s.size() + 6);
    const bool by_roots = pf_via_roots(s);
    disagreements += by_roots != is_pf_window(s, w, w, eps()).is_pf ? 1 : 0;
    pf += by_roots ? 1 : 0;
  }
  add(out, "root oracle = minor oracle", disagreements == 0,
      std::to_string(corpus.size()) + " sequences, " + std::to_string(pf) + " PF, " + std::to_string(disagreements) +
          " disagreements");

  std::size_t changed = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    const auto& s = corpus[i];
    const unsigned w = static_cast<unsigned>(s.size() + 6);
    const bool before = is_pf_window(s, w, w, eps()).is_pf;
    for (const Rational c : {Rational(1, 10), Rational(1), Rational(7)}) {
      changed += is_pf_window(scale_sequence(s, c), w, w, eps()).is_pf != before ? 1 : 0;
    }
  }
  add(out, "verdict invariant under rescaling", changed == 0, std::to_string(changed) + " changed of 300");

  std::vector<std::vector<Rational>> pf_seqs;
  for (const auto& s : corpus) {
    if (s.size() >= 3 && pf_via_roots(s)) pf_seqs.push_back(s);
    if (pf_seqs.size() == 6) break;
  }
  std::size_t closure_failures = 0, pairs = 0;
  for (std::size_t i = 0; i < pf_seqs.size(); ++i) {
    for (std::size_t j = i; j < pf_seqs.size(); ++j, ++pairs) {
      const std::size_t n = std::min(pf_seqs[i].size(), pf_seqs[j].size());
      std::vector<Rational> plain(n), weighted(n);
      Rational fact(1);
      for (std::size_t k = 0; k < n; ++k) {
        if (k > 0) fact *= Rational(static_cast<long>(k));
        plain[k] = pf_seqs[i][k] * pf_seqs[j][k];
        weighted[k] = fact * plain[k];
      }
      closure_failures += is_pf_window(plain, 8, 3, eps()).is_pf ? 0 : 1;
      closure_failures += is_pf_window(weighted, 8, 3, eps()).is_pf ? 0 : 1;
    }
  }
  add(out, "products stay PF", closure_failures == 0,
      std::to_string(pairs) + " pairs, " + std::to_string(closure_failures) + " failures");
  return out;
}

SuiteResult order_all(const SuiteParams&) {
  SuiteResult out;
  const Real one = order_estimate(HyperLimit({}, {Real(0)}), 500);
  add(out, "hyper n=1 in [0.45, 0.55]", one >= Real("0.45") && one <= Real("0.55"), "estimate=" + sci(one));
  const Real two = order_estimate(HyperLimit({}, {Real(0), Real(0)}), 500);
  add(out, "hyper n=2 in [0.20, 0.30]", two >= Real("0.20") && two <= Real("0.30"), "estimate=" + sci(two));
  const Real ratio = order_estimate(RatioQuad(Real(1), {Real("2.5")}, {Real("1.5")}, QParameter(Real("0.4")), 0), 500);
  add(out, "ratio family below 0.05", ratio < Real("0.05"), "estimate=" + sci(ratio));
  return out;
}

}  // namespace

SuiteResult run_suite(const std::string& key, const SuiteParams& params) {
  SuiteResult out;
  if (key == "t1i") out = shifted_aq_suite(params);
  else if (key == "t1ii") out = mixed_suite(params);
  else if (key == "t1iii") out = hyper_suite(params);
  else if (key == "t2") out = ratio_suite(params);
  else if (key == "tt1-rs") out = rogers_szego_suite(params);
  else if (key == "tt1-sw") out = stieltjes_wigert_suite(params);
  else if (key == "klv-threshold") out = realness_threshold_suite(params);
  else if (key == "identities-all") out = identities_all(params);
  else if (key == "pf-all") out = pf_all(params);
  else if (key == "order-all") out = order_all(params);
  else throw Error(ErrorKind::InvalidParameter, "unknown suite '" + key + "'");
  out.key = key;
  return out;
}

}  // namespace qzero
