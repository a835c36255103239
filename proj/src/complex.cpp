#include "qzero/complex.hpp"

namespace qzero {

Complex& Complex::operator/=(const Complex& o) {
  // Smith's scaling keeps the intermediate products in range.
  using boost::multiprecision::abs;
  if (abs(o.re) >= abs(o.im)) {
    Real ratio = o.im / o.re;
    Real den = o.re + o.im * ratio;
    Real r = (re + im * ratio) / den;
    im = (im - re * ratio) / den;
    re = std::move(r);
  } else {
    Real ratio = o.re / o.im;
    Real den = o.re * ratio + o.im;
    Real r = (re * ratio + im) / den;
    im = (im * ratio - re) / den;
    re = std::move(r);
  }
  return *this;
}

Complex polar(const Real& r, const Real& theta) {
  return {r * boost::multiprecision::cos(theta), r * boost::multiprecision::sin(theta)};
}

Complex pow(const Complex& z, std::size_t n) {
  Complex result(1);
  Complex base = z;
  while (n > 0) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n > 0) base *= base;
  }
  return result;
}

bool is_finite(const Complex& z) { return is_finite(z.re) && is_finite(z.im); }

}  // namespace qzero
