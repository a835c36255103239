#include "qzero/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/constants/constants.hpp>

#include "qzero/error.hpp"
#include "qzero/kernels.hpp"

namespace qzero {

namespace bmp = boost::multiprecision;

std::string to_string(HalfAxis h) { return h == HalfAxis::kNegative ? "negative" : "positive"; }

std::string to_string(ZeroClass c) {
  switch (c) {
    case ZeroClass::kNegativeReal: return "negative-real";
    case ZeroClass::kPositiveReal: return "positive-real";
    case ZeroClass::kComplexPair: return "complex-pair";
  }
  return "unknown";
}

std::string to_string(Certificate c) { return c == Certificate::kRigorous ? "rigorous" : "heuristic"; }

Real realness_tolerance() {
  const int d = static_cast<int>(current_precision().decimal_digits());
  return std::max(pow10(-25), pow10(-(d - 15)));
}

namespace {

Real pi() { return boost::math::constants::pi<Real>(); }

Real unit_roundoff() { return current_precision().unit_roundoff(); }

std::vector<Complex> to_complex(const std::vector<Real>& c) { return {c.begin(), c.end()}; }

// ---------------------------------------------------------------- roots

// Starting points on circles whose radii follow the upper convex hull of
// (k, log|c_k|); c_0 and c_n are nonzero here.
std::vector<Complex> newton_polygon_guesses(const std::vector<Complex>& c) {
  const std::size_t n = c.size() - 1;
  std::vector<std::size_t> ks;
  std::vector<Real> logs;
  for (std::size_t k = 0; k <= n; ++k) {
    const Real m = abs(c[k]);
    if (m == 0) continue;
    ks.push_back(k);
    logs.push_back(bmp::log(m));
  }
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2], b = hull.back();
      // drop b when it lies on or below the chord from a to i
      const Real cross = (logs[b] - logs[a]) * Real(ks[i] - ks[a]) - (logs[i] - logs[a]) * Real(ks[b] - ks[a]);
      if (cross <= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }
  std::vector<Complex> guesses;
  guesses.reserve(n);
  const Real two_pi = 2 * pi();
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    const std::size_t a = hull[s], b = hull[s + 1];
    const std::size_t count = ks[b] - ks[a];
    const Real radius = bmp::exp((logs[a] - logs[b]) / Real(count));
    for (std::size_t j = 0; j < count; ++j) {
      const Real theta = two_pi * Real(j) / Real(count) + two_pi * Real(s) / Real(n) + Real(0.4);
      guesses.push_back(polar(radius, theta));
    }
  }
  return guesses;
}

void newton_polish(const std::vector<Complex>& c, Complex& z) {
  for (int it = 0; it < 8; ++it) {
    Complex p, dp;
    for (std::size_t k = c.size(); k-- > 0;) {
      dp = dp * z + p;
      p = p * z + c[k];
    }
    if (p == Complex() || dp == Complex()) return;
    const Complex step = p / dp;
    const Complex next = z - step;
    Complex pn;
    for (std::size_t k = c.size(); k-- > 0;) pn = pn * next + c[k];
    if (!(abs(pn) < abs(p))) return;
    z = next;
    if (abs(step) <= abs(z) * unit_roundoff()) return;
  }
}

void sort_roots(std::vector<Complex>& roots) {
  std::vector<std::pair<Real, Complex>> keyed;
  keyed.reserve(roots.size());
  for (auto& z : roots) keyed.emplace_back(abs(z), z);
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  // moduli equal up to rounding (conjugate pairs) are ordered by argument
  const Real tie = pow10(-static_cast<int>(current_precision().decimal_digits()));
  for (std::size_t i = 1; i < keyed.size(); ++i) {
    for (std::size_t j = i; j > 0; --j) {
      auto& lo = keyed[j - 1];
      auto& hi = keyed[j];
      if (hi.first - lo.first > tie * (hi.first + 1)) break;
      if (arg(hi.second) < arg(lo.second)) {
        std::swap(lo, hi);
      } else {
        break;
      }
    }
  }
  for (std::size_t i = 0; i < roots.size(); ++i) roots[i] = keyed[i].second;
}

// ---------------------------------------------------------------- real scans

struct SignedValue {
  Real value;
  Real error;
  bool certain() const { return bmp::abs(value) > error; }
  int sign() const { return value > 0 ? 1 : -1; }
};

SignedValue evaluate_real(const CertifiedFunction& f, const Real& x) {
  Real p(0), majorant(0);
  const Real ax = bmp::abs(x);
  for (std::size_t k = f.coeffs.size(); k-- > 0;) {
    p = p * x + f.coeffs[k];
    majorant = majorant * ax + bmp::abs(f.coeffs[k]);
  }
  return {p, f.tail_bound + 8 * Real(f.coeffs.size() + 2) * unit_roundoff() * majorant};
}

std::pair<Real, Real> value_and_slope(const std::vector<Real>& c, const Real& x) {
  Real p(0), dp(0);
  for (std::size_t k = c.size(); k-- > 0;) {
    dp = dp * x + p;
    p = p * x + c[k];
  }
  return {p, dp};
}

// Odd-multiplicity zero in (lo, hi), the signs at the ends certified opposite.
RealZero refine_bracket(const CertifiedFunction& f, Real lo, Real hi, int sign_lo) {
  for (int it = 0; it < 60; ++it) {
    const Real mid = (lo + hi) / 2;
    const SignedValue v = evaluate_real(f, mid);
    if (!v.certain()) break;
    if (v.sign() == sign_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (bmp::abs(hi - lo) <= bmp::abs(mid) * pow10(-15)) break;
  }
  Real x = (lo + hi) / 2;
  for (int it = 0; it < 30; ++it) {
    const auto [p, dp] = value_and_slope(f.coeffs, x);
    if (dp == 0) break;
    const Real next = x - p / dp;
    if (next <= std::min(lo, hi) || next >= std::max(lo, hi)) break;
    const bool done = bmp::abs(next - x) <= bmp::abs(x) * unit_roundoff() * 16;
    x = next;
    if (done) break;
  }
  const Real half_width = bmp::abs(hi - lo) / 2;
  const int d = static_cast<int>(current_precision().decimal_digits());
  for (Real delta = bmp::abs(x) * pow10(5 - d); delta < half_width; delta *= 100) {
    const SignedValue a = evaluate_real(f, x - delta);
    const SignedValue b = evaluate_real(f, x + delta);
    if (a.certain() && b.certain() && a.sign() != b.sign()) return {x, delta};
  }
  return {(lo + hi) / 2, half_width};
}

// ---------------------------------------------------------------- winding

struct Arc {
  Real start;
  Real end;
};

std::optional<WindingResult> winding_attempt(const CertifiedFunction& f, const Complex& center, const Real& rho) {
  constexpr std::size_t kInitialArcs = 512;
  constexpr std::size_t kMaxArcs = 1 << 16;
  const std::vector<Complex> coeffs = to_complex(f.coeffs);
  const Real two_pi = 2 * pi();
  // the computed points sit within a few ulps of the true circle
  const Real drift = rho * pow10(4 - static_cast<int>(current_precision().working_digits()));

  std::vector<Arc> pending;
  for (std::size_t i = 0; i < kInitialArcs; ++i) {
    pending.push_back({two_pi * Real(i) / Real(kInitialArcs), two_pi * Real(i + 1) / Real(kInitialArcs)});
  }
  std::vector<std::pair<Arc, Complex>> done;
  while (!pending.empty()) {
    if (done.size() + pending.size() > kMaxArcs) return std::nullopt;
    std::vector<Complex> mids;
    std::vector<Real> widths;
    for (const Arc& a : pending) {
      mids.push_back(center + polar(rho, (a.start + a.end) / 2));
      widths.push_back(rho * (a.end - a.start) / 2 + drift);
    }
    const auto checks = kernels::parallel::certify_arcs(coeffs, mids, widths);
    std::vector<Arc> next;
    for (std::size_t i = 0; i < pending.size(); ++i) {
      const Real mag = abs(checks[i].value);
      const Real floor = 2 * (f.tail_bound + checks[i].rounding);
      if (mag > floor + 2 * checks[i].slack) {
        done.emplace_back(pending[i], checks[i].value);
      } else if (mag <= floor) {
        return std::nullopt;
      } else {
        const Real split = (pending[i].start + pending[i].end) / 2;
        next.push_back({pending[i].start, split});
        next.push_back({split, pending[i].end});
      }
    }
    pending = std::move(next);
  }
  std::sort(done.begin(), done.end(), [](const auto& a, const auto& b) { return a.first.start < b.first.start; });
  std::vector<Complex> starts;
  for (const auto& d : done) starts.push_back(center + polar(rho, d.first.start));
  const auto at_start = kernels::parallel::evaluate_points(coeffs, starts);
  Real total(0);
  for (std::size_t i = 0; i < done.size(); ++i) {
    const Complex& mid = done[i].second;
    const Complex& a = at_start[i];
    const Complex& b = at_start[(i + 1) % done.size()];
    total += arg(mid / a) + arg(b / mid);
  }
  WindingResult out;
  out.count = std::lround(static_cast<double>(total / two_pi));
  out.certificate = Certificate::kRigorous;
  out.radius = rho;
  out.arcs = done.size();
  return out;
}

std::vector<ZeroEntry> real_entries(const std::vector<RealZero>& zeros, HalfAxis half) {
  std::vector<ZeroEntry> out;
  for (const auto& z : zeros) {
    ZeroEntry e;
    e.location = Complex(z.location);
    e.enclosure_radius = z.enclosure_radius;
    e.classification = half == HalfAxis::kNegative ? ZeroClass::kNegativeReal : ZeroClass::kPositiveReal;
    e.imag_crosscheck = Real(0);
    e.certified = e.enclosure_radius < bmp::abs(z.location);
    out.push_back(std::move(e));
  }
  return out;
}

ZeroReport confinement(const CertifiedFunction& f, const Real& radius, HalfAxis half) {
  ZeroReport report;
  report.half_axis = half;
  report.origin_multiplicity = f.shift;
  report.truncation = f.truncation;

  const WindingResult w = winding_count(f, Complex(), radius);
  report.disk_radius = w.radius;
  report.winding_count = w.count;

  std::vector<RealZero> brackets;
  for (const char* ratio : {"1.1", "1.01", "1.001"}) {
    brackets = real_zeros_within(f, half, w.radius, parse_real(ratio));
    if (static_cast<long>(brackets.size()) >= w.count) break;
  }
  report.bracket_count = brackets.size();
  report.confined = static_cast<long>(brackets.size()) == w.count;
  report.zeros = real_entries(brackets, half);

  // complex cross-check against the roots of the truncation
  std::vector<Complex> roots;
  if (f.coeffs.size() > 1) roots = poly_roots(f.coeffs);
  std::vector<char> used(roots.size(), 0);
  for (auto& e : report.zeros) {
    std::size_t best = roots.size();
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (used[i]) continue;
      if (best == roots.size() || abs(roots[i] - e.location) < abs(roots[best] - e.location)) best = i;
    }
    if (best == roots.size()) continue;
    used[best] = 1;
    e.imag_crosscheck = bmp::abs(roots[best].im);
  }
  if (!report.confined) {
    const Real tol = realness_tolerance();
    for (std::size_t i = 0; i < roots.size(); ++i) {
      const Complex& z = roots[i];
      if (used[i] || !(abs(z) < w.radius)) continue;
      ZeroEntry e;
      e.location = z;
      e.imag_crosscheck = bmp::abs(z.im);
      if (bmp::abs(z.im) <= tol * abs(z)) {
        e.classification = z.re < 0 ? ZeroClass::kNegativeReal : ZeroClass::kPositiveReal;
      } else {
        e.classification = ZeroClass::kComplexPair;
      }
      Real gap = abs(z);
      for (std::size_t j = 0; j < roots.size(); ++j) {
        if (j != i) gap = std::min(gap, Real(abs(roots[j] - z)));
      }
      e.enclosure_radius = std::min(Real(gap / 3), Real(abs(z) * pow10(-20)));
      try {
        const WindingResult local = winding_count(f, z, e.enclosure_radius);
        e.certified = local.count == 1;
        e.enclosure_radius = local.radius;
      } catch (const Error&) {
        e.certified = false;
      }
      report.zeros.push_back(std::move(e));
    }
  }
  std::stable_sort(report.zeros.begin(), report.zeros.end(), [](const ZeroEntry& a, const ZeroEntry& b) {
    return abs(a.location) < abs(b.location);
  });
  const Real tie = pow10(-static_cast<int>(current_precision().decimal_digits()));
  for (std::size_t i = 1; i < report.zeros.size(); ++i) {
    for (std::size_t j = i; j > 0; --j) {
      const Real lo = abs(report.zeros[j - 1].location), hi = abs(report.zeros[j].location);
      if (hi - lo > tie * (hi + 1) || !(arg(report.zeros[j].location) < arg(report.zeros[j - 1].location))) break;
      std::swap(report.zeros[j - 1], report.zeros[j]);
    }
  }
  const bool all_certified =
      std::all_of(report.zeros.begin(), report.zeros.end(), [](const ZeroEntry& e) { return e.certified; });
  report.certificate = w.certificate == Certificate::kRigorous && all_certified &&
                               static_cast<long>(report.zeros.size()) == w.count
                           ? Certificate::kRigorous
                           : Certificate::kHeuristic;
  return report;
}

}  // namespace

CertifiedFunction certify(const CoefficientFamily& fam, const Real& radius, const Real& eps) {
  if (!(radius > 0)) throw Error(ErrorKind::InvalidParameter, "radius must be positive");
  const std::size_t shift = leading_order(fam);
  // the tail of f / z^K is the tail of f divided by R^K on |z| = R, and the
  // maximum principle carries that bound inside
  const Real scale = bmp::pow(radius, static_cast<long>(shift));
  CertifiedPolynomial poly = certified_polynomial(fam, radius, eps * scale);
  CertifiedFunction out;
  out.shift = shift;
  out.radius = radius;
  out.tail_bound = poly.truncation.tail_bound / scale;
  out.truncation = poly.truncation;
  if (poly.coeffs.size() <= shift) poly.coeffs.resize(shift + 1, Real(0));
  out.coeffs.assign(poly.coeffs.begin() + static_cast<long>(shift), poly.coeffs.end());
  return out;
}

CertifiedFunction certify(const std::vector<Real>& poly, const Real& radius) {
  if (!(radius > 0)) throw Error(ErrorKind::InvalidParameter, "radius must be positive");
  std::size_t shift = 0;
  while (shift < poly.size() && poly[shift] == 0) ++shift;
  if (shift == poly.size()) throw Error(ErrorKind::DegenerateAllZero, "zero polynomial");
  CertifiedFunction out;
  out.shift = shift;
  out.radius = radius;
  out.tail_bound = Real(0);
  out.coeffs.assign(poly.begin() + static_cast<long>(shift), poly.end());
  while (out.coeffs.size() > 1 && out.coeffs.back() == 0) out.coeffs.pop_back();
  out.truncation.N = poly.size() - 1;
  out.truncation.radius = radius;
  out.truncation.tail_bound = Real(0);
  return out;
}

std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs) {
  std::vector<Complex> c = coeffs;
  while (!c.empty() && c.back() == Complex()) c.pop_back();
  if (c.empty()) throw Error(ErrorKind::InvalidParameter, "poly_roots needs a nonzero polynomial");
  std::size_t at_origin = 0;
  while (c[at_origin] == Complex()) ++at_origin;
  c.erase(c.begin(), c.begin() + static_cast<long>(at_origin));
  const std::size_t n = c.size() - 1;
  if (n + at_origin > 10'000) throw Error(ErrorKind::InvalidParameter, "poly_roots supports degree <= 10^4");

  std::vector<Complex> roots;
  if (n == 1) {
    roots.push_back(-c[0] / c[1]);
  } else if (n > 1) {
    roots = newton_polygon_guesses(c);
    std::vector<char> active(n, 1);
    const Real stop = 16 * Real(n + 1) * unit_roundoff();
    for (int it = 0; it < 100 + static_cast<int>(n); ++it) {
      const auto steps = kernels::parallel::aberth_sweep(c, roots, active);
      bool moved = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (!active[i]) continue;
        if (steps[i].residual <= stop * steps[i].majorant) {
          active[i] = 0;
          continue;
        }
        roots[i] -= steps[i].correction;
        moved = true;
      }
      if (!moved) break;
    }
    for (auto& z : roots) newton_polish(c, z);
  }
  const Real target = pow10(5 - static_cast<int>(current_precision().decimal_digits()));
  for (const auto& z : roots) {
    Complex p;
    Real majorant(0);
    const Real r = abs(z);
    for (std::size_t k = c.size(); k-- > 0;) {
      p = p * z + c[k];
      majorant = majorant * r + abs(c[k]);
    }
    if (!(abs(p) <= target * majorant)) {
      throw Error(ErrorKind::IllConditioned, "root polishing did not reach the residual target");
    }
  }
  roots.insert(roots.begin(), at_origin, Complex());
  sort_roots(roots);
  return roots;
}

std::vector<Complex> poly_roots(const std::vector<Real>& coeffs) { return poly_roots(to_complex(coeffs)); }

WindingResult winding_count(const CertifiedFunction& f, const Complex& center, const Real& radius) {
  if (!(radius > 0)) throw Error(ErrorKind::InvalidParameter, "radius must be positive");
  const Real reach = abs(center);
  bool tried = false;
  for (const char* factor : {"1", "1.01", "0.99", "1.02", "0.98"}) {
    const Real rho = radius * parse_real(factor);
    if (reach + rho > f.radius) continue;
    tried = true;
    if (auto result = winding_attempt(f, center, rho)) return *result;
  }
  if (!tried) throw Error(ErrorKind::InvalidParameter, "contour leaves the certified disk");
  throw Error(ErrorKind::ZeroOnContour, "no certified contour near radius " + to_decimal(radius, 10));
}

WindingResult winding_count(const CoefficientFamily& fam, const Complex& center, const Real& radius,
                            const Real& eps) {
  const CertifiedFunction f = certify(fam, abs(center) + radius * parse_real("1.02"), eps);
  return winding_count(f, center, radius);
}

std::vector<RealZero> real_zeros_within(const CertifiedFunction& f, HalfAxis half, const Real& limit,
                                        const Real& grid_ratio) {
  if (!(grid_ratio > 1)) throw Error(ErrorKind::InvalidParameter, "grid ratio must exceed 1");
  const Real dir = half == HalfAxis::kNegative ? Real(-1) : Real(1);
  const Real end = std::min(limit, f.radius);
  const Real nudge = parse_real("1.0001");
  std::vector<RealZero> out;
  std::optional<std::pair<Real, SignedValue>> prev;
  for (Real t = pow10(-6);; t *= grid_ratio) {
    const bool last = t >= end;
    Real x = dir * (last ? end : t);
    SignedValue v = evaluate_real(f, x);
    // step inward off a point that sits on a zero to working accuracy
    for (int tries = 0; !v.certain() && tries < 8; ++tries) {
      x /= nudge;
      v = evaluate_real(f, x);
    }
    if (v.certain()) {
      if (prev && prev->second.sign() != v.sign()) out.push_back(refine_bracket(f, prev->first, x, prev->second.sign()));
      prev.emplace(x, v);
    }
    if (last) break;
  }
  return out;
}

std::vector<RealZero> real_axis_zeros(const CoefficientFamily& fam, HalfAxis half, std::size_t m, const Real& eps) {
  if (m == 0) throw Error(ErrorKind::InvalidParameter, "m must be positive");
  std::vector<RealZero> found;
  for (int decade = 1; decade <= 6; ++decade) {
    const Real limit = pow10(decade);
    const CertifiedFunction f = certify(fam, limit, eps);
    found = real_zeros_within(f, half, limit, parse_real("1.1"));
    if (found.size() >= m) {
      found.resize(m);
      return found;
    }
  }
  throw Error(ErrorKind::NotEnoughZerosFound, "found " + std::to_string(found.size()) + " of " +
                                                  std::to_string(m) + " sign changes within 10^6");
}

ZeroReport axis_confinement(const CoefficientFamily& fam, const Real& radius, HalfAxis half, const Real& eps) {
  const CertifiedFunction f = certify(fam, radius * parse_real("1.02"), eps);
  ZeroReport report = confinement(f, radius, half);
  report.source = family_tag(fam);
  report.family = fam;
  return report;
}

ZeroReport axis_confinement(const std::vector<Real>& poly, const Real& radius, HalfAxis half) {
  const CertifiedFunction f = certify(poly, radius * parse_real("1.02"));
  ZeroReport report = confinement(f, radius, half);
  report.source = "polynomial";
  report.polynomial = poly;
  return report;
}

namespace {

Real ratio_with_base(const RatioQuad& fam, const Real& base, std::size_t k) {
  const Real kk(k);
  Real r = base;
  for (const Real& a : fam.a) r *= (a + kk - 2) / (a + kk - 1);
  for (const Real& b : fam.b) r *= (b + kk - 1) / (b + kk - 2);
  return r;
}

Real bound_with_base(const RatioQuad& fam, const Real& base, std::size_t K) {
  Real r = base;
  for (const Real& a : fam.a) r *= 1 - 1 / (a + Real(K) - 1);
  return r;
}

}  // namespace

Real log_concavity_ratio(const RatioQuad& fam, std::size_t k) {
  if (k < 2) throw Error(ErrorKind::InvalidParameter, "ratio needs k >= 2");
  return ratio_with_base(fam, bmp::pow(fam.q.value(), -2 * fam.alpha), k);
}

Real log_concavity_lower_bound(const RatioQuad& fam, std::size_t K) {
  return bound_with_base(fam, bmp::pow(fam.q.value(), -2 * fam.alpha), K);
}

std::size_t theorem2_K0(const RatioQuad& fam, std::size_t horizon) {
  if (horizon == 0) throw Error(ErrorKind::InvalidParameter, "horizon must be positive");
  constexpr std::size_t kLimit = 1'000'000;
  const Real base = bmp::pow(fam.q.value(), -2 * fam.alpha);
  // the bound at `covered` settles every k >= covered; below it, ratios are checked one by one
  std::size_t covered = 2;
  while (!(bound_with_base(fam, base, covered) > 4)) {
    if (++covered > kLimit) throw Error(ErrorKind::HorizonExceeded, "no K0 <= 10^6");
  }
  std::size_t K = covered;
  while (K > 2 && ratio_with_base(fam, base, K - 1) > 4) --K;
  for (std::size_t k = covered; k <= K + horizon; ++k) {
    if (!(ratio_with_base(fam, base, k) > 4)) throw Error(ErrorKind::HorizonExceeded, "ratio bound inconsistent");
  }
  return K;
}

}  // namespace qzero
