#include "qzero/qcore.hpp"

#include <algorithm>

#include "qzero/error.hpp"

namespace qzero {

QParameter::QParameter(Real q) : q_(std::move(q)) {
  if (!is_finite(q_) || q_ <= 0 || q_ >= 1) {
    throw Error(ErrorKind::InvalidParameter, "q must satisfy 0 < q < 1, got " + to_decimal(q_, 20));
  }
}

QParameter QParameter::promoted() const {
  Real q = q_;
  q.precision(Real::default_precision());
  return QParameter(std::move(q));
}

namespace {

template <typename T>
T finite_product(const T& a, const Real& q, std::size_t k) {
  T product(1);
  Real qj(1);
  for (std::size_t j = 0; j < k; ++j) {
    product *= T(1) - a * qj;
    qj *= q;
  }
  return product;
}

template <typename T>
Real magnitude(const T& x) {
  if constexpr (std::is_same_v<T, Real>) {
    return boost::multiprecision::abs(x);
  } else {
    return abs(x);
  }
}

template <typename T>
InfiniteProduct<T> infinite_product(const T& a, const QParameter& qp, const Real& eps) {
  if (!is_finite(a)) throw Error(ErrorKind::DivergentInput, "(a;q)_inf needs finite a");
  if (eps <= 0) throw Error(ErrorKind::InvalidParameter, "eps must be positive");
  const Real& q = qp.value();
  const Real abs_a = magnitude(a);
  const Real one_minus_q = 1 - q;
  T product(1);
  Real qj(1);  // q^J
  for (std::size_t j = 0; j < 100'000'000; ++j) {
    const Real tail_log = 2 * abs_a * qj / one_minus_q;
    if (abs_a * qj <= Real(0.5) && tail_log <= 1 && (tail_log == 0 || magnitude(product) * 2 * tail_log <= eps)) {
      return {product, j};
    }
    T factor = T(1) - a * qj;
    if (factor == T(0)) return {T(0), j + 1};
    product *= factor;
    qj *= q;
  }
  throw Error(ErrorKind::NoConvergence, "infinite product did not reach its stop index");
}

}  // namespace

Real qpochhammer_finite(const Real& a, const QParameter& q, std::size_t k) {
  return finite_product(a, q.value(), k);
}

Complex qpochhammer_finite(const Complex& a, const QParameter& q, std::size_t k) {
  return finite_product(a, q.value(), k);
}

InfiniteProduct<Real> qpochhammer_infinite_detail(const Real& a, const QParameter& q, const Real& eps) {
  return infinite_product(a, q, eps);
}

InfiniteProduct<Complex> qpochhammer_infinite_detail(const Complex& a, const QParameter& q,
                                                     const Real& eps) {
  return infinite_product(a, q, eps);
}

Real rising_factorial(const Real& a, std::size_t k) {
  Real product(1);
  for (std::size_t j = 0; j < k; ++j) product *= a + j;
  return product;
}

Real gauss_binomial(std::size_t n, std::size_t k, const QParameter& qp) {
  if (k > n) {
    throw Error(ErrorKind::OutOfRange,
                "gauss_binomial needs k <= n (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
  }
  // Evaluate with the smaller of k, n-k so the k <-> n-k symmetry is exact.
  const std::size_t kk = std::min(k, n - k);
  const Real& q = qp.value();
  Real result(1);
  for (std::size_t i = 1; i <= kk; ++i) {
    result *= (1 - boost::multiprecision::pow(q, static_cast<long>(n - kk + i)));
    result /= (1 - boost::multiprecision::pow(q, static_cast<long>(i)));
  }
  return result;
}

Real factorial(std::size_t k) {
  Real product(1);
  for (std::size_t j = 2; j <= k; ++j) product *= j;
  return product;
}

}  // namespace qzero
