#pragma once

#include <cstddef>
#include <string_view>

#include "qzero/complex.hpp"
#include "qzero/precision.hpp"

namespace qzero {

/// Base of a q-series, validated to lie strictly inside (0, 1).
class QParameter {
 public:
  explicit QParameter(Real q);
  static QParameter parse(std::string_view text) { return QParameter(parse_real(text)); }

  const Real& value() const noexcept { return q_; }
  /// Copy carried at the current default precision.
  QParameter promoted() const;
  operator const Real&() const noexcept { return q_; }  // NOLINT(google-explicit-constructor)

 private:
  Real q_;
};

/// (a;q)_k = prod_{j<k} (1 - a q^j); exactly 1 for k = 0.
Real qpochhammer_finite(const Real& a, const QParameter& q, std::size_t k);
Complex qpochhammer_finite(const Complex& a, const QParameter& q, std::size_t k);

/// Result of an infinite product together with the index the product was
/// stopped at (factors j < stop_index were multiplied).
template <typename T>
struct InfiniteProduct {
  T value;
  std::size_t stop_index;
};

// (a;q)_inf with absolute error <= eps. The stop index J is the first with
// |a| q^J <= 1/2, L <= 1 and |P_J| * 2 L <= eps, where L = 2|a| q^J / (1 - q)
// bounds |log prod_{j>=J} (1 - a q^j)|.
InfiniteProduct<Real> qpochhammer_infinite_detail(const Real& a, const QParameter& q, const Real& eps);
InfiniteProduct<Complex> qpochhammer_infinite_detail(const Complex& a, const QParameter& q, const Real& eps);

inline Real qpochhammer_infinite(const Real& a, const QParameter& q, const Real& eps) {
  return qpochhammer_infinite_detail(a, q, eps).value;
}
inline Complex qpochhammer_infinite(const Complex& a, const QParameter& q, const Real& eps) {
  return qpochhammer_infinite_detail(a, q, eps).value;
}

/// (a)_k = a (a+1) ... (a+k-1).
Real rising_factorial(const Real& a, std::size_t k);

/// Gaussian binomial [n choose k]_q. Throws OutOfRange for k > n.
Real gauss_binomial(std::size_t n, std::size_t k, const QParameter& q);

Real factorial(std::size_t k);

}  // namespace qzero
