#include "qzero/identities.hpp"

#include <algorithm>
#include <limits>
#include <utility>
#include <vector>

#include "qzero/error.hpp"
#include "qzero/series.hpp"

namespace qzero {

namespace bmp = boost::multiprecision;

namespace {

Real infinity() { return std::numeric_limits<Real>::infinity(); }

IdentityReport finish(std::string name, Complex lhs, Complex rhs, const Real& tolerance, std::string detail = {}) {
  IdentityReport r;
  r.name = std::move(name);
  r.abs_residual = abs(lhs - rhs);
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.tolerance = tolerance;
  r.pass = r.abs_residual <= tolerance;
  r.detail = std::move(detail);
  return r;
}

// Inequality checks: residual is the worst relative violation.
IdentityReport finish_inequality(std::string name, Complex lhs, Complex rhs, const Real& violation,
                                 std::string detail) {
  IdentityReport r;
  r.name = std::move(name);
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.abs_residual = violation;
  r.tolerance = current_precision().check_tolerance();
  r.pass = r.abs_residual <= r.tolerance;
  r.detail = std::move(detail);
  return r;
}

// Tail of sum_k (a;q)_k x^k / (q;q)_k past N: the ratio of consecutive terms
// is at most (1 + |a| q^N) |x| / (1 - q^{N+1}) from N on.
Real binomial_tail(const Real& abs_a, const Real& abs_x, const QParameter& q, std::size_t N,
                   const Real& abs_term) {
  const Real qN = bmp::pow(q.value(), static_cast<long>(N));
  const Real rho = (1 + abs_a * qN) * abs_x / (1 - qN * q.value());
  if (!(rho < 1)) return infinity();
  return abs_term * rho / (1 - rho);
}

Complex binomial_sum(const Complex& a, const Complex& x, const QParameter& q, const Real& eps) {
  const Real abs_a = abs(a), abs_x = abs(x);
  Complex term(1);
  Real qk(1);
  const auto next = [&](std::size_t k) {
    if (k > 0) {
      term *= (Complex(1) - a * qk) * x / (1 - qk * q.value());
      qk *= q.value();
    }
    return term;
  };
  const auto tail = [&](std::size_t N, const std::vector<Complex>& terms) {
    return binomial_tail(abs_a, abs_x, q, N, abs(terms.back()));
  };
  return certified_sum(next, tail, eps).value;
}

// Head sum_{k<m} and tail bound sum_{k>=m} of sum_k w_k u^k / (q;q)_k with
// w_k = 1, or q^{k(k-1)/2} when `quadratic`.
std::pair<Real, Real> euler_split(const Real& u, std::size_t m, const QParameter& q, bool quadratic) {
  Real head(0), term(1), qk(1);
  for (std::size_t k = 0; k < m; ++k) {
    head += term;
    term *= u * (quadratic ? qk : Real(1)) / (1 - qk * q.value());
    qk *= q.value();
  }
  const Real rho = u * (quadratic ? qk : Real(1)) / (1 - qk * q.value());
  if (!(rho < 1)) return {head, infinity()};
  return {head, term / (1 - rho)};
}

// sum_{n>N} of a Cauchy product of two Euler-type majorants: every pair
// (k, j) with k + j > N has k or j at least N/2 + 1.
Real product_tail(const Real& u, const Real& v, const QParameter& q, bool quadratic, std::size_t N) {
  const std::size_t m = N / 2 + 1;
  const auto [head_u, tail_u] = euler_split(u, m, q, quadratic);
  const auto [head_v, tail_v] = euler_split(v, m, q, quadratic);
  if (bmp::isinf(tail_u) || bmp::isinf(tail_v)) return infinity();
  return tail_u * (head_v + tail_v) + (head_u + tail_u) * tail_v;
}

Real products_eps(const Real& eps) { return eps * pow10(-20); }

std::string describe(const char* what, const Real& value) { return std::string(what) + "=" + to_decimal(value, 6); }

}  // namespace

IdentityReport q_binomial_identity(const Complex& a, const Complex& x, const QParameter& q, const Real& eps) {
  if (!(abs(x) < 1)) throw Error(ErrorKind::DomainViolation, "q-binomial series needs |x| < 1");
  const Complex lhs = binomial_sum(a, x, q, eps / 10);
  const Real pe = products_eps(eps);
  const Complex rhs = qpochhammer_infinite(a * x, q, pe) / qpochhammer_infinite(x, q, pe);
  return finish("q_binomial", lhs, rhs, eps);
}

IdentityReport collapse_check(int l, const Complex& z, const QParameter& q, const Real& eps) {
  if (l < 2) throw Error(ErrorKind::InvalidParameter, "collapse_check needs l >= 2");
  const Real ql = bmp::pow(q.value(), l);
  const Complex w = z / ql;
  if (!(abs(w) < 1)) throw Error(ErrorKind::DomainViolation, "collapse_check needs |z q^-l| < 1");
  const Complex lhs = binomial_sum(Complex(ql), w, q, eps / 10);
  const Complex rhs = Complex(1) / qpochhammer_finite(w, q, static_cast<std::size_t>(l));
  return finish("collapse", lhs, rhs, eps, "l=" + std::to_string(l));
}

IdentityReport rs_generating_function(const Real& x, const Real& y, const QParameter& q, const Complex& t,
                                      const Real& eps) {
  const Real u = bmp::abs(x) * abs(t), v = bmp::abs(y) * abs(t);
  if (!(std::max(u, v) < 1)) throw Error(ErrorKind::DomainViolation, "RS generating function needs |xt|, |yt| < 1");
  // h_{n+1} = (x + y) h_n - x y (1 - q^n) h_{n-1}
  Real h_prev(0), h(1), qn(1);
  Complex power(1);
  Real qq(1);  // (q;q)_n
  const auto term = [&](std::size_t n) {
    if (n > 0) {
      const Real next = (x + y) * h - x * y * (1 - qn) * h_prev;
      h_prev = std::move(h);
      h = next;
      qn *= q.value();
      qq *= 1 - qn;
      power *= t;
    }
    return power * (h / qq);
  };
  const auto tail = [&](std::size_t N, const std::vector<Complex>&) { return product_tail(u, v, q, false, N); };
  const Complex lhs = certified_sum(term, tail, eps / 10).value;
  const Real pe = products_eps(eps);
  const Complex rhs = Complex(1) / (qpochhammer_infinite(x * t, q, pe) * qpochhammer_infinite(y * t, q, pe));
  return finish("rs_generating_function", lhs, rhs, eps);
}

IdentityReport sw_generating_function(const Real& x, const Real& y, const QParameter& q, const Complex& t,
                                      const Real& eps) {
  const Real u = bmp::abs(x) * abs(t), v = bmp::abs(y) * abs(t);
  Real qq(1), qn(1);
  Complex power(1);
  const auto term = [&](std::size_t n) {
    if (n > 0) {
      qn *= q.value();
      qq *= 1 - qn;
      power *= -t;
    }
    // g_n q^{n(n-1)/2} = sum_k [n k] q^{k(k-n) + n(n-1)/2} x^k y^{n-k}, binomials rolled in k
    Real sum(0), binom(1);
    const long nn = static_cast<long>(n);
    for (long k = 0; k <= nn; ++k) {
      if (k > 0) binom *= (1 - bmp::pow(q.value(), nn - k + 1)) / (1 - bmp::pow(q.value(), k));
      sum += binom * bmp::pow(q.value(), k * (k - nn) + nn * (nn - 1) / 2) * bmp::pow(x, k) * bmp::pow(y, nn - k);
    }
    return power * (sum / qq);
  };
  const auto tail = [&](std::size_t N, const std::vector<Complex>&) { return product_tail(u, v, q, true, N); };
  const Complex lhs = certified_sum(term, tail, eps / 10).value;

  const Real pe = products_eps(eps);
  const Complex with_t = qpochhammer_infinite(x * t, q, pe) * qpochhammer_infinite(y * t, q, pe);
  const Complex printed = Complex(qpochhammer_infinite(x, q, pe) * qpochhammer_infinite(y, q, pe));
  const Real r_t = abs(lhs - with_t), r_p = abs(lhs - printed);
  const bool t_ok = r_t <= eps, p_ok = r_p <= eps;

  IdentityReport r = finish("sw_generating_function", lhs, r_t <= r_p ? with_t : printed, eps,
                            describe("residual_xt_yt", r_t) + " " + describe("residual_x_y", r_p));
  r.variant = t_ok && p_ok ? "both" : t_ok ? "(xt,yt;q)_inf" : p_ok ? "(x,y;q)_inf" : "none";
  return r;
}

IdentityReport aq_special_cases(std::size_t n, const Complex& z, const QParameter& q, const Real& eps) {
  // (a) the family evaluator against a direct sum
  const Complex family = evaluate(AqAlpha(Real(1), Real(0), q), z, eps / 10);
  Complex term(1);
  Real qk(1);
  const auto next = [&](std::size_t k) {
    if (k > 0) {
      // q^{k^2} / q^{(k-1)^2} = q^{2k-1}
      term *= z * (qk * qk * q.value()) / (1 - qk * q.value());
      qk *= q.value();
    }
    return term;
  };
  const Real abs_z = abs(z);
  const auto tail = [&](std::size_t N, const std::vector<Complex>& terms) {
    const Real qN = bmp::pow(q.value(), static_cast<long>(N));
    const Real rho = qN * qN * q.value() * abs_z / (1 - qN * q.value());
    if (!(rho < 1)) return infinity();
    return abs(terms.back()) * rho / (1 - rho);
  };
  const Complex direct = certified_sum(next, tail, eps / 10).value;
  const Real residual_a = abs(family - direct);

  // (b) the terminating sum, nonzero only for k <= n
  const Real q_minus_n = bmp::pow(q.value(), -static_cast<long>(n));
  Complex lhs;
  Complex power(1);
  for (std::size_t k = 0; k <= n; ++k) {
    lhs += power * (qpochhammer_finite(q_minus_n, q, k) * bmp::pow(q.value(), Real(k * k) / 2) /
                    qpochhammer_finite(q.value(), q, k));
    power *= z;
  }
  const Real qq_n = qpochhammer_finite(q.value(), q, n);
  struct Candidate {
    const char* s_text;
    Real s;
    SwConvention convention;
  };
  const Candidate candidates[] = {{"1/2", Real(1) / 2, SwConvention::kSquare},
                                  {"1/2", Real(1) / 2, SwConvention::kSquarePlusLinear},
                                  {"-1/2", Real(-1) / 2, SwConvention::kSquare},
                                  {"-1/2", Real(-1) / 2, SwConvention::kSquarePlusLinear}};
  std::vector<std::string> matches;
  Complex best_rhs;
  Real best = infinity();
  std::string detail = describe("residual_a", residual_a);
  for (const auto& c : candidates) {
    const Complex rhs = qq_n * sw_classical(n, z * bmp::pow(q.value(), c.s - Real(n)), q, c.convention);
    const Real r = abs(lhs - rhs);
    const std::string name = std::string("s=") + c.s_text + "," + to_string(c.convention);
    detail += " " + describe(("residual[" + name + "]").c_str(), r);
    if (r <= eps) matches.push_back(name);
    if (r < best) {
      best = r;
      best_rhs = rhs;
    }
  }
  IdentityReport out = finish("aq_special_cases", lhs, best_rhs, eps, detail);
  out.abs_residual = std::max(out.abs_residual, residual_a);
  out.pass = out.abs_residual <= eps;
  if (matches.empty()) {
    out.variant = "none";
  } else {
    out.variant = matches.front();
    for (std::size_t i = 1; i < matches.size(); ++i) out.variant += "|" + matches[i];
  }
  return out;
}

namespace {

std::pair<Real, Real> hopital_deltas(int l, const Real& nu, std::size_t k, int j) {
  const QParameter q(1 - bmp::pow(Real(2), -j));
  const Real& qv = q.value();
  const Real delta1 = bmp::abs(qpochhammer_finite(bmp::pow(qv, l), q, k) / qpochhammer_finite(qv, q, k) -
                               rising_factorial(Real(l), k) / factorial(k));
  const Real delta2 = bmp::abs(bmp::pow(1 - qv, static_cast<long>(2 * k)) /
                                   (qpochhammer_finite(qv, q, k) * qpochhammer_finite(bmp::pow(qv, nu + 1), q, k)) -
                               1 / (factorial(k) * rising_factorial(nu + 1, k)));
  return {delta1, delta2};
}

}  // namespace

IdentityReport hopital_limits(int l, const Real& nu, std::size_t k, int j) {
  if (l < 2 || !(nu >= 0) || j < 1 || j > 40) {
    throw Error(ErrorKind::InvalidParameter, "hopital_limits needs l >= 2, nu >= 0, 1 <= j <= 40");
  }
  const auto [a1, a2] = hopital_deltas(l, nu, k, j);
  const auto [b1, b2] = hopital_deltas(l, nu, k, j + 1);
  constexpr double kFactor = 1.8;
  // relative shortfall from shrinking by kFactor; zero when it does
  const auto shortfall = [&](const Real& before, const Real& after) {
    if (after == 0) return Real(0);
    return std::max(Real(0), (kFactor * after - before) / (kFactor * after));
  };
  const Real violation = std::max(shortfall(a1, b1), shortfall(a2, b2));
  const auto ratio = [](const Real& before, const Real& after) { return after == 0 ? infinity() : before / after; };
  return finish_inequality("hopital_limits", Complex(ratio(a1, b1)), Complex(ratio(a2, b2)), violation,
                           describe("delta1_j", a1) + " " + describe("delta1_j+1", b1) + " " +
                               describe("delta2_j", a2) + " " + describe("delta2_j+1", b2));
}

IdentityReport pochhammer_inequality(std::size_t l, const QParameter& q) {
  if (l == 0) throw Error(ErrorKind::InvalidParameter, "pochhammer_inequality needs l >= 1");
  const Real& qv = q.value();
  const Real fact = factorial(l);
  const Real lower = fact * bmp::pow(qv, static_cast<long>(l * (l - 1) / 2));
  const Real middle = qpochhammer_finite(qv, q, l) / bmp::pow(1 - qv, static_cast<long>(l));
  const Real inverse_bound = bmp::pow(qv, -Real(l * l) / 2) / fact;
  const Real violation = std::max({Real(0), (lower - middle) / middle, (middle - fact) / fact,
                                   (1 / middle - inverse_bound) / inverse_bound});
  return finish_inequality("pochhammer_inequality", Complex(middle), Complex(fact), violation,
                           describe("lower", lower) + " " + describe("middle", middle) + " " +
                               describe("upper", fact) + " " + describe("inverse", 1 / middle) + " " +
                               describe("inverse_bound", inverse_bound));
}

Real hn_bound_constant(const Real& x, const Real& y, const QParameter& q) {
  const Real ax = bmp::abs(x), ay = bmp::abs(y);
  if (ax <= 1 && ay <= 1) return 1 / q.value();
  if (ax > 1 && ay > 1) return ax * ay / q.value();
  return std::max(ax, ay) / q.value();
}

IdentityReport hn_bound_check(const Real& x, const Real& y, const QParameter& q, std::size_t n_max) {
  if (n_max > 200) throw Error(ErrorKind::InvalidParameter, "hn_bound_check needs n_max <= 200");
  const Real a = hn_bound_constant(x, y, q);
  const Real scale = 1 / qpochhammer_infinite(q.value(), q, current_precision().unit_roundoff());
  Real violation(0), worst_ratio(0), h_prev(0), h(1), qn(1), bound = scale;
  std::size_t worst_n = 0;
  for (std::size_t n = 0; n <= n_max; ++n) {
    if (n > 0) {
      const Real next = (x + y) * h - x * y * (1 - qn) * h_prev;
      h_prev = std::move(h);
      h = next;
      qn *= q.value();
      bound *= a;
    }
    const Real ratio = bmp::abs(h) / bound;
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst_n = n;
    }
    violation = std::max(violation, ratio - 1);
  }
  return finish_inequality("hn_bound", Complex(worst_ratio), Complex(1), violation,
                           describe("a", a) + " worst_n=" + std::to_string(worst_n));
}

}  // namespace qzero
