#include "qzero/kernels.hpp"

#include <atomic>
#include <limits>

namespace qzero::kernels {

namespace bmp = boost::multiprecision;

std::vector<std::vector<unsigned>> combinations(unsigned n, unsigned k) {
  std::vector<std::vector<unsigned>> out;
  if (k > n) return out;
  std::vector<unsigned> c(k);
  for (unsigned i = 0; i < k; ++i) c[i] = i;
  while (true) {
    out.push_back(c);
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && c[i] == n - k + static_cast<unsigned>(i)) --i;
    if (i < 0) break;
    ++c[i];
    for (unsigned j = static_cast<unsigned>(i) + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

namespace {

// 10^-digits at the current default precision, cached per precision.
const Real& unit_roundoff() {
  thread_local unsigned digits = 0;
  thread_local Real u;
  if (digits != Real::default_precision()) {
    digits = Real::default_precision();
    u = bmp::pow(Real(10), -static_cast<long>(digits));
  }
  return u;
}

Complex horner(const std::vector<Complex>& coeffs, const Complex& z) {
  Complex value;
  Scratch s;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    mul_in_place(value, z, s);
    value += coeffs[k];
  }
  return value;
}

// Taylor coefficients beyond this order are bounded through the majorant
// sum_k |c_k| x^k instead of computed.
constexpr std::size_t kTaylorTerms = 10;

ArcCheck certify_one(const std::vector<Complex>& coeffs, const Complex& mid, const Real& h) {
  const std::size_t n = coeffs.size();
  const Real r = abs(mid);
  // past order J, C(k, j+1) / C(k, j) <= k / (J+2), so the rest is geometric
  std::size_t J = std::min(kTaylorTerms, n == 0 ? 0 : n - 1);
  const Real growth = Real(n) * h / (Real(J + 2) * r);
  if (!(growth < Real(0.5))) J = n == 0 ? 0 : n - 1;

  // partial Taylor shift to the midpoint: pass i finalises t_i
  std::vector<Complex> t = coeffs;
  Scratch scratch;
  for (std::size_t i = 0; i <= J && i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j-- > i;) add_product(t[j], mid, t[j + 1], scratch);
  }
  Real slack(0);
  for (std::size_t j = J + 1; j-- > 1;) slack = (slack + abs(t[j])) * h;
  if (J + 1 < n) {
    std::vector<Real> s(n);
    for (std::size_t k = 0; k < n; ++k) s[k] = abs(coeffs[k]);
    Real product;
    for (std::size_t i = 0; i <= J + 1; ++i) {
      for (std::size_t j = n - 1; j-- > i;) {
        bmp::multiply(product, r, s[j + 1]);
        s[j] += product;
      }
    }
    slack += s[J + 1] * bmp::pow(h, static_cast<long>(J + 1)) / (1 - growth);
  }
  const Real reach = r + h;
  Real majorant(0);
  for (std::size_t k = n; k-- > 0;) {
    majorant *= reach;
    majorant += abs(coeffs[k]);
  }
  const Real& u = unit_roundoff();
  ArcCheck out;
  out.value = n == 0 ? Complex() : t[0];
  out.slack = std::move(slack);
  out.rounding = 4 * Real(n + 2) * u * majorant;
  return out;
}

AberthStep aberth_one(const std::vector<Complex>& coeffs, const std::vector<Complex>& roots, std::size_t i) {
  const Complex& z = roots[i];
  const Real r = abs(z);
  Complex p, dp;
  Real majorant(0);
  Scratch s;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    mul_in_place(dp, z, s);
    dp += p;
    mul_in_place(p, z, s);
    p += coeffs[k];
    majorant *= r;
    majorant += abs(coeffs[k]);
  }
  AberthStep out;
  out.residual = abs(p);
  out.majorant = majorant;
  if (p == Complex()) return out;
  Complex repulsion;
  for (std::size_t j = 0; j < roots.size(); ++j) {
    if (j == i) continue;
    const Complex d = z - roots[j];
    if (d == Complex()) continue;
    repulsion += Complex(1) / d;
  }
  if (dp == Complex()) {
    // flat spot: nudge outward by a relative step so the sweep can proceed
    out.correction = Complex(-(r + 1) * Real(1e-3), (r + 1) * Real(1e-3));
    return out;
  }
  const Complex newton = p / dp;
  const Complex denom = Complex(1) - newton * repulsion;
  out.correction = denom == Complex() ? newton : newton / denom;
  return out;
}

template <typename Fn>
std::optional<MinorHit> scan_minors(unsigned window, unsigned size, const MinorTest& test, Fn&& loop) {
  const auto combos = combinations(window, size);
  const std::size_t m = combos.size();
  const std::size_t total = m * m;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  Real best_value;
  loop(total, [&](std::size_t idx, std::size_t& shared_best, auto&& record) {
    if (idx >= shared_best) return;
    const auto& rows = combos[idx / m];
    const auto& cols = combos[idx % m];
    if (auto v = test(rows, cols)) record(idx, std::move(*v));
  }, best, best_value);
  if (best == std::numeric_limits<std::size_t>::max()) return std::nullopt;
  return MinorHit{combos[best / m], combos[best % m], best_value};
}

}  // namespace

namespace serial {

std::vector<Complex> evaluate_points(const std::vector<Complex>& coeffs, const std::vector<Complex>& points) {
  std::vector<Complex> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = horner(coeffs, points[i]);
  return out;
}

std::vector<ArcCheck> certify_arcs(const std::vector<Complex>& coeffs, const std::vector<Complex>& mids,
                                   const std::vector<Real>& half_widths) {
  std::vector<ArcCheck> out(mids.size());
  for (std::size_t i = 0; i < mids.size(); ++i) out[i] = certify_one(coeffs, mids[i], half_widths[i]);
  return out;
}

std::vector<AberthStep> aberth_sweep(const std::vector<Complex>& coeffs, const std::vector<Complex>& roots,
                                     const std::vector<char>& active) {
  std::vector<AberthStep> out(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (active[i]) out[i] = aberth_one(coeffs, roots, i);
  }
  return out;
}

std::optional<MinorHit> first_minor_violation(unsigned window, unsigned size, const MinorTest& test) {
  return scan_minors(window, size, test, [](std::size_t total, auto&& body, std::size_t& best, Real& best_value) {
    for (std::size_t idx = 0; idx < total && best == std::numeric_limits<std::size_t>::max(); ++idx) {
      body(idx, best, [&](std::size_t i, Real v) {
        best = i;
        best_value = std::move(v);
      });
    }
  });
}

}  // namespace serial

namespace parallel {

std::vector<Complex> evaluate_points(const std::vector<Complex>& coeffs, const std::vector<Complex>& points) {
  std::vector<Complex> out(points.size());
  const long n = static_cast<long>(points.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = horner(coeffs, points[i]);
  return out;
}

std::vector<ArcCheck> certify_arcs(const std::vector<Complex>& coeffs, const std::vector<Complex>& mids,
                                   const std::vector<Real>& half_widths) {
  std::vector<ArcCheck> out(mids.size());
  const long n = static_cast<long>(mids.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = certify_one(coeffs, mids[i], half_widths[i]);
  return out;
}

std::vector<AberthStep> aberth_sweep(const std::vector<Complex>& coeffs, const std::vector<Complex>& roots,
                                     const std::vector<char>& active) {
  std::vector<AberthStep> out(roots.size());
  const long n = static_cast<long>(roots.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < n; ++i) {
    if (active[i]) out[i] = aberth_one(coeffs, roots, static_cast<std::size_t>(i));
  }
  return out;
}

std::optional<MinorHit> first_minor_violation(unsigned window, unsigned size, const MinorTest& test) {
  return scan_minors(window, size, test, [](std::size_t total, auto&& body, std::size_t& best, Real& best_value) {
    std::atomic<std::size_t> shared{best};
    const long n = static_cast<long>(total);
#pragma omp parallel for schedule(dynamic, 16)
    for (long idx = 0; idx < n; ++idx) {
      std::size_t seen = shared.load(std::memory_order_relaxed);
      body(static_cast<std::size_t>(idx), seen, [&](std::size_t i, Real v) {
#pragma omp critical(qzero_minor_best)
        {
          if (i < shared.load()) {
            shared.store(i);
            best_value = std::move(v);
          }
        }
      });
    }
    best = shared.load();
  });
}

}  // namespace parallel

}  // namespace qzero::kernels
