#include "qzero/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qzero/error.hpp"

namespace qzero {

namespace bmp = boost::multiprecision;

namespace {

constexpr std::size_t kMaxTerms = 1'000'000;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Real infinity() { return std::numeric_limits<Real>::infinity(); }

Real qpow(const Real& q, const Real& exponent) { return bmp::pow(q, exponent); }

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorKind::InvalidParameter, message);
}

void require_finite(const Real& x, const char* name) {
  require(is_finite(x), std::string(name) + " must be finite");
}

// Incremental generator of c_0, c_1, ...
class CoefficientStream {
 public:
  explicit CoefficientStream(const CoefficientFamily& fam);
  Real next();

 private:
  std::function<Real()> step_;
};

CoefficientStream::CoefficientStream(const CoefficientFamily& fam) {
  step_ = std::visit(
      Overloaded{
          [](const AqAlpha& f) -> std::function<Real()> {
            // c_{k+1} = c_k (1 - a q^k) / (1 - q^{k+1}) q^{alpha (2k+1)}
            struct State {
              Real a, q, qa2, c, qk, gauss;
              std::size_t k = 0;
            };
            auto s = std::make_shared<State>();
            s->a = f.a;
            s->q = f.q.value();
            const Real qa = qpow(s->q, f.alpha);
            s->qa2 = qa * qa;
            s->c = 1;
            s->qk = 1;
            s->gauss = qa;
            return [s]() {
              Real out = s->c;
              s->c *= (1 - s->a * s->qk) / (1 - s->qk * s->q) * s->gauss;
              s->qk *= s->q;
              s->gauss *= s->qa2;
              ++s->k;
              return out;
            };
          },
          [](const MixedQ& f) -> std::function<Real()> {
            struct State {
              std::vector<Real> qj, qj_l, qj_k;  // q_j, q_j^{l_j}, q_j^k
              std::vector<Real> qr, qr_nu, qr_k;  // q_r, q_r^{nu_r+1}, q_r^k
              Real qa2, gauss, c;
            };
            auto s = std::make_shared<State>();
            for (std::size_t j = 0; j < f.qj.size(); ++j) {
              s->qj.push_back(f.qj[j].value());
              s->qj_l.push_back(bmp::pow(f.qj[j].value(), f.l[j]));
              s->qj_k.emplace_back(1);
            }
            for (std::size_t r = 0; r < f.qr.size(); ++r) {
              s->qr.push_back(f.qr[r].value());
              s->qr_nu.push_back(qpow(f.qr[r].value(), f.nu[r] + 1));
              s->qr_k.emplace_back(1);
            }
            const Real qa = qpow(f.q.value(), f.alpha);
            s->qa2 = qa * qa;
            s->gauss = qa;
            s->c = 1;
            return [s]() {
              Real out = s->c;
              Real ratio = s->gauss;
              for (std::size_t j = 0; j < s->qj.size(); ++j) {
                ratio *= (1 - s->qj_l[j] * s->qj_k[j]) / (1 - s->qj_k[j] * s->qj[j]);
                s->qj_k[j] *= s->qj[j];
              }
              for (std::size_t r = 0; r < s->qr.size(); ++r) {
                ratio /= (1 - s->qr_k[r] * s->qr[r]) * (1 - s->qr_nu[r] * s->qr_k[r]);
                s->qr_k[r] *= s->qr[r];
              }
              s->c *= ratio;
              s->gauss *= s->qa2;
              return out;
            };
          },
          [](const HyperLimit& f) -> std::function<Real()> {
            struct State {
              std::vector<Real> l, nu1;
              std::size_t mn = 0;
              Real c;
              std::size_t k = 0;
            };
            auto s = std::make_shared<State>();
            for (int l : f.l) s->l.emplace_back(l);
            for (const Real& nu : f.nu) s->nu1.push_back(nu + 1);
            s->mn = f.l.size() + f.nu.size();
            s->c = 1;
            return [s]() {
              Real out = s->c;
              Real ratio(1);
              for (const Real& l : s->l) ratio *= l + s->k;
              ratio /= bmp::pow(Real(s->k + 1), static_cast<long>(s->mn));
              for (const Real& v : s->nu1) ratio /= v + s->k;
              s->c *= ratio;
              ++s->k;
              return out;
            };
          },
          [&fam](const RatioQuad& f) -> std::function<Real()> {
            struct State {
              std::vector<Real> a, b;
              Real qa2, gauss, c;
              std::size_t k = 0, start = 0;
            };
            auto s = std::make_shared<State>();
            s->a = f.a;
            s->b = f.b;
            s->start = f.start;
            const Real qa = qpow(f.q.value(), f.alpha);
            s->qa2 = qa * qa;
            // q^{alpha (2 start + 1)}
            s->gauss = bmp::pow(qa, static_cast<long>(2 * f.start + 1));
            s->c = coefficient(fam, f.start);
            return [s]() -> Real {
              if (s->k < s->start) {
                ++s->k;
                return Real(0);
              }
              Real out = s->c;
              Real ratio = s->gauss;
              for (const Real& a : s->a) ratio *= a + s->k;
              for (const Real& b : s->b) ratio /= b + s->k;
              s->c *= ratio;
              s->gauss *= s->qa2;
              ++s->k;
              return out;
            };
          },
          [](const RogersSzegoSeries& f) -> std::function<Real()> {
            // h_n / (q;q)_n = sum_k x^k y^{n-k} / ((q;q)_k (q;q)_{n-k})
            struct State {
              Real x, y, q, alpha;
              std::vector<Real> xp, yp, inv_poch;
              Real qk;
              std::size_t n = 0;
            };
            auto s = std::make_shared<State>();
            s->x = f.x;
            s->y = f.y;
            s->q = f.q.value();
            s->alpha = f.alpha;
            s->qk = s->q;
            return [s]() {
              const std::size_t n = s->n;
              if (n == 0) {
                s->xp.emplace_back(1);
                s->yp.emplace_back(1);
                s->inv_poch.emplace_back(1);
              } else {
                s->xp.push_back(s->xp.back() * s->x);
                s->yp.push_back(s->yp.back() * s->y);
                s->inv_poch.push_back(s->inv_poch.back() / (1 - s->qk));
                s->qk *= s->q;
              }
              Real sum(0);
              for (std::size_t k = 0; k <= n; ++k) sum += s->xp[k] * s->yp[n - k] * s->inv_poch[k] * s->inv_poch[n - k];
              ++s->n;
              return sum * qpow(s->q, s->alpha * Real(n * n));
            };
          },
          [](const StieltjesWigertSeries& f) -> std::function<Real()> {
            // g_n / (q;q)_n = sum_k q^{-k(n-k)} x^k y^{n-k} / ((q;q)_k (q;q)_{n-k})
            struct State {
              Real x, y, q, alpha;
              bool alternating = false;
              std::vector<Real> xp, yp, inv_poch;
              Real qk;
              std::size_t n = 0;
            };
            auto s = std::make_shared<State>();
            s->x = f.x;
            s->y = f.y;
            s->q = f.q.value();
            s->alpha = f.alpha;
            s->alternating = f.alternating;
            s->qk = s->q;
            return [s]() {
              const std::size_t n = s->n;
              if (n == 0) {
                s->xp.emplace_back(1);
                s->yp.emplace_back(1);
                s->inv_poch.emplace_back(1);
              } else {
                s->xp.push_back(s->xp.back() * s->x);
                s->yp.push_back(s->yp.back() * s->y);
                s->inv_poch.push_back(s->inv_poch.back() / (1 - s->qk));
                s->qk *= s->q;
              }
              Real sum(0);
              for (std::size_t k = 0; k <= n; ++k) {
                const long e = -static_cast<long>(k * (n - k));
                sum += bmp::pow(s->q, e) * s->xp[k] * s->yp[n - k] * s->inv_poch[k] * s->inv_poch[n - k];
              }
              ++s->n;
              Real c = sum * qpow(s->q, s->alpha * Real(n * n));
              if (s->alternating && (n % 2 == 1)) c = -c;
              return c;
            };
          },
      },
      fam);
}

Real CoefficientStream::next() { return step_(); }

// Tail sum_{k>N} |c_k| R^k <= |c_N| R^N r / (1 - r) when |c_{k+1}/c_k| R <= r < 1/2 for k >= N.
Real ratio_tail(const Real& c_N_abs, std::size_t N, const Real& radius, const Real& ratio_bound) {
  const Real r = ratio_bound * radius;
  if (!(r < Real(0.5))) return infinity();
  if (c_N_abs == 0) return Real(0);
  return c_N_abs * bmp::pow(radius, static_cast<long>(N)) * r / (1 - r);
}

// Majorant tail for the two polynomial-coefficient families:
// |c_n| <= B_n = (n+1) M^n q^{beta n^2} / (q;q)_inf^2.
Real majorant_tail(const Real& x, const Real& y, const QParameter& qp, const Real& beta, std::size_t N,
                   const Real& radius) {
  const Real M = std::max(Real(bmp::abs(x)), Real(bmp::abs(y)));
  if (M == 0) return Real(0);
  const Real& q = qp.value();
  const std::size_t n1 = N + 1;
  const Real r = Real(n1 + 2) / Real(n1 + 1) * M * radius * qpow(q, beta * (2 * n1 + 1));
  if (!(r < Real(0.5))) return infinity();
  const Real tol = current_precision().unit_roundoff();
  const Real poch = qpochhammer_infinite(q, qp, tol);
  const Real poch_lower = poch * (1 - Real(1e-10));
  const Real b_n1 = Real(n1 + 1) * bmp::pow(M * radius, static_cast<long>(n1)) *
                    qpow(q, beta * Real(n1 * n1)) / (poch_lower * poch_lower);
  return b_n1 / (1 - r);
}

}  // namespace

AqAlpha::AqAlpha(Real alpha_, Real a_, QParameter q_) : alpha(std::move(alpha_)), a(std::move(a_)), q(std::move(q_)) {
  require_finite(alpha, "alpha");
  require_finite(a, "a");
  require(alpha > 0, "AqAlpha needs alpha > 0");
}

MixedQ::MixedQ(Real alpha_, QParameter q_, std::vector<int> l_, std::vector<QParameter> qj_, std::vector<Real> nu_,
               std::vector<QParameter> qr_)
    : alpha(std::move(alpha_)), q(std::move(q_)), l(std::move(l_)), qj(std::move(qj_)), nu(std::move(nu_)),
      qr(std::move(qr_)) {
  require_finite(alpha, "alpha");
  require(alpha > 0, "MixedQ needs alpha > 0");
  require(l.size() == qj.size(), "MixedQ needs one q_j per l_j");
  require(nu.size() == qr.size(), "MixedQ needs one q_r per nu_r");
  require(l.size() + nu.size() >= 1, "MixedQ needs m + n >= 1");
  for (int lj : l) require(lj >= 2, "MixedQ needs every l_j >= 2");
  for (const Real& v : nu) {
    require_finite(v, "nu");
    require(v > -1, "MixedQ needs every nu_r > -1");
  }
}

HyperLimit::HyperLimit(std::vector<int> l_, std::vector<Real> nu_) : l(std::move(l_)), nu(std::move(nu_)) {
  require(!nu.empty(), "HyperLimit needs n >= 1");
  for (int lj : l) require(lj >= 2, "HyperLimit needs every l_j >= 2");
  for (const Real& v : nu) {
    require_finite(v, "nu");
    require(v >= 0, "HyperLimit needs every nu_r >= 0");
  }
}

RatioQuad::RatioQuad(Real alpha_, std::vector<Real> a_, std::vector<Real> b_, QParameter q_, std::size_t start_)
    : alpha(std::move(alpha_)), a(std::move(a_)), b(std::move(b_)), q(std::move(q_)), start(start_) {
  require_finite(alpha, "alpha");
  require(alpha > 0, "RatioQuad needs alpha > 0");
  require(!a.empty() && !b.empty(), "RatioQuad needs r >= 1 and s >= 1");
  for (const Real& v : a) {
    require_finite(v, "a_i");
    require(v > 0, "RatioQuad needs every a_i > 0");
  }
  for (const Real& v : b) {
    require_finite(v, "b_j");
    require(v > 0, "RatioQuad needs every b_j > 0");
  }
  const Real bound = bmp::pow(Real(2), -1 / alpha);
  require(q.value() < bound, "RatioQuad needs 0 < q < 2^(-1/alpha), got q = " + to_decimal(q.value(), 20) +
                                 " >= " + to_decimal(bound, 20));
}

RogersSzegoSeries::RogersSzegoSeries(Real alpha_, Real x_, Real y_, QParameter q_)
    : alpha(std::move(alpha_)), x(std::move(x_)), y(std::move(y_)), q(std::move(q_)) {
  require_finite(alpha, "alpha");
  require_finite(x, "x");
  require_finite(y, "y");
  require(alpha > 0, "RogersSzegoSeries needs alpha > 0");
}

StieltjesWigertSeries::StieltjesWigertSeries(Real alpha_, Real x_, Real y_, QParameter q_, bool alternating_)
    : alpha(std::move(alpha_)), x(std::move(x_)), y(std::move(y_)), q(std::move(q_)), alternating(alternating_) {
  require_finite(alpha, "alpha");
  require_finite(x, "x");
  require_finite(y, "y");
  require(alpha >= Real(0.5), "StieltjesWigertSeries needs alpha >= 1/2");
}

std::string family_tag(const CoefficientFamily& fam) {
  return std::visit(Overloaded{
                        [](const AqAlpha&) { return std::string("aq"); },
                        [](const MixedQ&) { return std::string("mixedq"); },
                        [](const HyperLimit&) { return std::string("hyper"); },
                        [](const RatioQuad&) { return std::string("ratioquad"); },
                        [](const RogersSzegoSeries&) { return std::string("rs"); },
                        [](const StieltjesWigertSeries& f) { return std::string(f.alternating ? "sw-alt" : "sw"); },
                    },
                    fam);
}

namespace {

Real promote(const Real& x) {
  Real y = x;
  y.precision(Real::default_precision());
  return y;
}

std::vector<Real> promote(const std::vector<Real>& xs) {
  std::vector<Real> out;
  for (const Real& x : xs) out.push_back(promote(x));
  return out;
}

std::vector<QParameter> promote(const std::vector<QParameter>& qs) {
  std::vector<QParameter> out;
  for (const QParameter& q : qs) out.push_back(q.promoted());
  return out;
}

}  // namespace

CoefficientFamily promoted(const CoefficientFamily& fam) {
  return std::visit(
      Overloaded{
          [](const AqAlpha& f) -> CoefficientFamily { return AqAlpha(promote(f.alpha), promote(f.a), f.q.promoted()); },
          [](const MixedQ& f) -> CoefficientFamily {
            return MixedQ(promote(f.alpha), f.q.promoted(), f.l, promote(f.qj), promote(f.nu), promote(f.qr));
          },
          [](const HyperLimit& f) -> CoefficientFamily { return HyperLimit(f.l, promote(f.nu)); },
          [](const RatioQuad& f) -> CoefficientFamily {
            return RatioQuad(promote(f.alpha), promote(f.a), promote(f.b), f.q.promoted(), f.start);
          },
          [](const RogersSzegoSeries& f) -> CoefficientFamily {
            return RogersSzegoSeries(promote(f.alpha), promote(f.x), promote(f.y), f.q.promoted());
          },
          [](const StieltjesWigertSeries& f) -> CoefficientFamily {
            return StieltjesWigertSeries(promote(f.alpha), promote(f.x), promote(f.y), f.q.promoted(), f.alternating);
          },
      },
      fam);
}

std::size_t leading_order(const CoefficientFamily& fam) {
  if (const auto* f = std::get_if<RatioQuad>(&fam)) return f->start;
  return 0;
}

Real rogers_szego(std::size_t n, const Real& x, const Real& y, const QParameter& q) {
  Real sum(0);
  for (std::size_t k = 0; k <= n; ++k) {
    sum += gauss_binomial(n, k, q) * bmp::pow(x, static_cast<long>(k)) * bmp::pow(y, static_cast<long>(n - k));
  }
  return sum;
}

Real stieltjes_wigert_gn(std::size_t n, const Real& x, const Real& y, const QParameter& q) {
  Real sum(0);
  for (std::size_t k = 0; k <= n; ++k) {
    const long e = static_cast<long>(k) * (static_cast<long>(k) - static_cast<long>(n));
    sum += gauss_binomial(n, k, q) * bmp::pow(q.value(), e) * bmp::pow(x, static_cast<long>(k)) *
           bmp::pow(y, static_cast<long>(n - k));
  }
  return sum;
}

std::string to_string(SwConvention c) { return c == SwConvention::kSquare ? "k^2" : "k^2+k"; }

Real sw_classical(std::size_t n, const Real& x, const QParameter& q, SwConvention convention) {
  Real sum(0);
  for (std::size_t k = 0; k <= n; ++k) {
    const long e = static_cast<long>(k * k + (convention == SwConvention::kSquarePlusLinear ? k : 0));
    sum += bmp::pow(q.value(), e) * bmp::pow(-x, static_cast<long>(k)) /
           (qpochhammer_finite(q.value(), q, k) * qpochhammer_finite(q.value(), q, n - k));
  }
  return sum;
}

Complex sw_classical(std::size_t n, const Complex& x, const QParameter& q, SwConvention convention) {
  Complex sum;
  Complex power(1);
  const Complex minus_x = -x;
  for (std::size_t k = 0; k <= n; ++k) {
    const long e = static_cast<long>(k * k + (convention == SwConvention::kSquarePlusLinear ? k : 0));
    sum += power * (bmp::pow(q.value(), e) /
                    (qpochhammer_finite(q.value(), q, k) * qpochhammer_finite(q.value(), q, n - k)));
    power *= minus_x;
  }
  return sum;
}

Real coefficient(const CoefficientFamily& fam, std::size_t k) {
  const Real kk(k * k);
  return std::visit(
      Overloaded{
          [&](const AqAlpha& f) {
            return qpochhammer_finite(f.a, f.q, k) * qpow(f.q.value(), f.alpha * kk) /
                   qpochhammer_finite(f.q.value(), f.q, k);
          },
          [&](const MixedQ& f) {
            Real c = qpow(f.q.value(), f.alpha * kk);
            for (std::size_t j = 0; j < f.l.size(); ++j) {
              const Real& qj = f.qj[j].value();
              c *= qpochhammer_finite(bmp::pow(qj, f.l[j]), f.qj[j], k) / qpochhammer_finite(qj, f.qj[j], k);
            }
            for (std::size_t r = 0; r < f.nu.size(); ++r) {
              const Real& qr = f.qr[r].value();
              c /= qpochhammer_finite(qr, f.qr[r], k) * qpochhammer_finite(qpow(qr, f.nu[r] + 1), f.qr[r], k);
            }
            return c;
          },
          [&](const HyperLimit& f) {
            Real c(1);
            for (int l : f.l) c *= rising_factorial(Real(l), k);
            c /= bmp::pow(factorial(k), static_cast<long>(f.l.size() + f.nu.size()));
            for (const Real& v : f.nu) c /= rising_factorial(v + 1, k);
            return c;
          },
          [&](const RatioQuad& f) {
            if (k < f.start) return Real(0);
            Real c = qpow(f.q.value(), f.alpha * kk);
            for (const Real& a : f.a) c *= rising_factorial(a, k);
            for (const Real& b : f.b) c /= rising_factorial(b, k);
            return c;
          },
          [&](const RogersSzegoSeries& f) {
            return rogers_szego(k, f.x, f.y, f.q) * qpow(f.q.value(), f.alpha * kk) /
                   qpochhammer_finite(f.q.value(), f.q, k);
          },
          [&](const StieltjesWigertSeries& f) {
            Real c = stieltjes_wigert_gn(k, f.x, f.y, f.q) * qpow(f.q.value(), f.alpha * kk) /
                     qpochhammer_finite(f.q.value(), f.q, k);
            if (f.alternating && (k % 2 == 1)) c = -c;
            return c;
          },
      },
      fam);
}

std::vector<Real> coefficients(const CoefficientFamily& fam, std::size_t count) {
  CoefficientStream stream(fam);
  std::vector<Real> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(stream.next());
  return out;
}

Real tail_bound_at(const CoefficientFamily& fam, std::size_t N, const Real& c_N, const Real& radius) {
  if (radius == 0) return Real(0);
  const Real c_abs = bmp::abs(c_N);
  const Real n(N);
  return std::visit(
      Overloaded{
          [&](const AqAlpha& f) {
            const Real& q = f.q.value();
            const Real qN = bmp::pow(q, static_cast<long>(N));
            const Real rho = (1 + bmp::abs(f.a) * qN) / (1 - qN * q) * qpow(q, f.alpha * (2 * n + 1));
            return ratio_tail(c_abs, N, radius, rho);
          },
          [&](const MixedQ& f) {
            Real rho = qpow(f.q.value(), f.alpha * (2 * n + 1));
            for (const QParameter& qj : f.qj) rho /= 1 - bmp::pow(qj.value(), static_cast<long>(N + 1));
            for (std::size_t r = 0; r < f.qr.size(); ++r) {
              const Real& qr = f.qr[r].value();
              rho /= (1 - bmp::pow(qr, static_cast<long>(N + 1))) * (1 - qpow(qr, f.nu[r] + 1 + n));
            }
            return ratio_tail(c_abs, N, radius, rho);
          },
          [&](const HyperLimit& f) {
            // every factor of c_{k+1}/c_k is nonincreasing in k
            Real rho(1);
            for (int l : f.l) rho *= Real(l) + n;
            rho /= bmp::pow(n + 1, static_cast<long>(f.l.size() + f.nu.size()));
            for (const Real& v : f.nu) rho /= v + 1 + n;
            return ratio_tail(c_abs, N, radius, rho);
          },
          [&](const RatioQuad& f) {
            // c_{k+1}/c_k <= prod(a_i+N) N^{-s} q^{alpha(2N+1)} for k >= N once
            // k^{r-s} q^{alpha(2k+1)} is nonincreasing.
            if (N < f.start || N == 0) return infinity();
            const double r_minus_s = static_cast<double>(f.a.size()) - static_cast<double>(f.b.size());
            if (r_minus_s > 0) {
              const Real threshold = Real(r_minus_s) / (2 * f.alpha * bmp::log(1 / f.q.value()));
              if (n < threshold) return infinity();
            }
            Real rho = qpow(f.q.value(), f.alpha * (2 * n + 1));
            for (const Real& a : f.a) rho *= a + n;
            rho /= bmp::pow(n, static_cast<long>(f.b.size()));
            return ratio_tail(c_abs, N, radius, rho);
          },
          [&](const RogersSzegoSeries& f) { return majorant_tail(f.x, f.y, f.q, f.alpha, N, radius); },
          [&](const StieltjesWigertSeries& f) {
            return majorant_tail(f.x, f.y, f.q, f.alpha - Real(0.25), N, radius);
          },
      },
      fam);
}

CertifiedPolynomial certified_polynomial(const CoefficientFamily& fam, const Real& radius, const Real& eps) {
  if (!(eps > 0)) throw Error(ErrorKind::InvalidParameter, "eps must be positive");
  if (radius < 0) throw Error(ErrorKind::InvalidParameter, "radius must be nonnegative");
  CoefficientStream stream(fam);
  CertifiedPolynomial out;
  out.truncation.radius = radius;
  if (radius == 0) {
    out.coeffs.push_back(stream.next());
    out.truncation.N = 0;
    out.truncation.tail_bound = 0;
    return out;
  }
  for (std::size_t N = 0; N < kMaxTerms; ++N) {
    out.coeffs.push_back(stream.next());
    const Real tail = tail_bound_at(fam, N, out.coeffs.back(), radius);
    if (tail <= eps) {
      out.truncation.N = N;
      out.truncation.tail_bound = tail;
      return out;
    }
  }
  throw Error(ErrorKind::NoConvergence, "ratio test not certified within 10^6 terms for family " + family_tag(fam));
}

SeriesTruncation truncation_for(const CoefficientFamily& fam, const Real& radius, const Real& eps) {
  return certified_polynomial(fam, radius, eps).truncation;
}

namespace {

template <typename T>
T evaluate_impl(const CoefficientFamily& fam, const T& z, const Real& eps) {
  if (!(eps > 0)) throw Error(ErrorKind::InvalidParameter, "eps must be positive");
  const PrecisionContext base = current_precision();
  const auto radius_of = [](const T& v) -> Real {
    if constexpr (std::is_same_v<T, Real>) {
      return bmp::abs(v);
    } else {
      return abs(v);
    }
  };
  const Real radius = radius_of(z);
  for (unsigned extra = 0; extra <= 80; extra += 20) {
    ScopedPrecision scope(PrecisionContext(base.decimal_digits(), base.guard_digits() + extra));
    const CoefficientFamily wide = promoted(fam);
    const CertifiedPolynomial poly = certified_polynomial(wide, radius, eps / 2);
    T value(0);
    Real majorant(0);
    for (std::size_t k = poly.coeffs.size(); k-- > 0;) {
      value = value * z + T(poly.coeffs[k]);
      majorant = majorant * radius + bmp::abs(poly.coeffs[k]);
    }
    const Real rounding = 4 * Real(poly.coeffs.size() + 2) * current_precision().unit_roundoff() * majorant;
    if (poly.truncation.tail_bound + rounding <= eps) {
      // hand back at base precision only when that rounding still fits in eps
      const Real narrowing = 2 * radius_of(value) * base.unit_roundoff();
      if (poly.truncation.tail_bound + rounding + narrowing <= eps) {
        if constexpr (std::is_same_v<T, Real>) {
          value.precision(base.working_digits());
        } else {
          value.re.precision(base.working_digits());
          value.im.precision(base.working_digits());
        }
      }
      return value;
    }
  }
  throw Error(ErrorKind::NoConvergence, "evaluation could not reach the requested accuracy");
}

}  // namespace

Complex evaluate(const CoefficientFamily& fam, const Complex& z, const Real& eps) {
  return evaluate_impl<Complex>(fam, z, eps);
}

Real evaluate(const CoefficientFamily& fam, const Real& x, const Real& eps) { return evaluate_impl<Real>(fam, x, eps); }

Real order_quotient(const CoefficientFamily& fam, std::size_t k) {
  const Real c = bmp::abs(coefficients(fam, k + 1).back());
  const Real kk(k);
  return kk * bmp::log(kk) / -bmp::log(c);
}

Real order_estimate(const CoefficientFamily& fam, std::size_t K) {
  if (K < 10) throw Error(ErrorKind::InvalidParameter, "order_estimate needs K >= 10");
  const std::vector<Real> c = coefficients(fam, K + 1);
  const std::size_t first = std::max<std::size_t>(10, (K + 1) / 2);
  bool found = false;
  Real best(0);
  for (std::size_t k = first; k <= K; ++k) {
    const Real mag = bmp::abs(c[k]);
    if (mag == 0 || mag >= 1) continue;
    const Real value = bmp::lgamma(Real(k + 1)) / -bmp::log(mag);
    if (!found || value > best) best = value;
    found = true;
  }
  if (!found) throw Error(ErrorKind::Degenerate, "no coefficient with 0 < |c_k| < 1 in the order window");
  return best;
}

CertifiedSum certified_sum(const std::function<Complex(std::size_t)>& term,
                           const std::function<Real(std::size_t, const std::vector<Complex>&)>& tail,
                           const Real& eps, std::size_t max_terms) {
  if (!(eps > 0)) throw Error(ErrorKind::InvalidParameter, "eps must be positive");
  std::vector<Complex> terms;
  Real majorant(0);
  for (std::size_t k = 0; k < max_terms; ++k) {
    terms.push_back(term(k));
    majorant += abs(terms.back());
    const Real t = tail(k, terms);
    if (t <= eps) {
      CertifiedSum out;
      // sum smallest-first to keep the rounding bound simple
      for (std::size_t i = terms.size(); i-- > 0;) out.value += terms[i];
      out.error_bound = t + 4 * Real(terms.size() + 1) * current_precision().unit_roundoff() * majorant;
      out.terms = terms.size();
      return out;
    }
  }
  throw Error(ErrorKind::NoConvergence, "series tail not certified within the term limit");
}

}  // namespace qzero
