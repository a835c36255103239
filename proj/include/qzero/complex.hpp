#pragma once

#include "qzero/precision.hpp"

namespace qzero {

/// Complex number over Real. std::complex is unspecified for non-builtin
/// element types, so the handful of operations we need live here.
struct Complex {
  Real re;
  Real im;

  Complex() : re(0), im(0) {}
  Complex(Real r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(int r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Complex& operator*=(const Real& s) {
    re *= s;
    im *= s;
    return *this;
  }
  Complex& operator/=(const Complex& o);
  Complex& operator/=(const Real& s) {
    re /= s;
    im /= s;
    return *this;
  }
};

inline Complex operator+(Complex a, const Complex& b) { return a += b; }
inline Complex operator-(Complex a, const Complex& b) { return a -= b; }
inline Complex operator*(Complex a, const Complex& b) { return a *= b; }
inline Complex operator*(Complex a, const Real& s) { return a *= s; }
inline Complex operator*(const Real& s, Complex a) { return a *= s; }
inline Complex operator/(Complex a, const Complex& b) { return a /= b; }
inline Complex operator/(Complex a, const Real& s) { return a /= s; }
inline Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
inline bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

inline Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
inline Real abs(const Complex& z) { return boost::multiprecision::hypot(z.re, z.im); }
inline Real arg(const Complex& z) { return boost::multiprecision::atan2(z.im, z.re); }
inline Complex conj(const Complex& z) { return {z.re, -z.im}; }
Complex polar(const Real& r, const Real& theta);

// Allocation-free forms of the inner-loop updates; `Scratch` carries the two
// temporaries between calls.
struct Scratch {
  Real a;
  Real b;
};

/// v *= z
inline void mul_in_place(Complex& v, const Complex& z, Scratch& s) {
  using boost::multiprecision::multiply;
  multiply(s.a, v.re, z.re);
  multiply(s.b, v.im, z.im);
  s.a -= s.b;
  multiply(s.b, v.re, z.im);
  v.im *= z.re;
  v.im += s.b;
  v.re.swap(s.a);
}

/// acc += x * y
inline void add_product(Complex& acc, const Complex& x, const Complex& y, Scratch& s) {
  using boost::multiprecision::multiply;
  multiply(s.a, x.re, y.re);
  multiply(s.b, x.im, y.im);
  s.a -= s.b;
  acc.re += s.a;
  multiply(s.a, x.re, y.im);
  multiply(s.b, x.im, y.re);
  s.a += s.b;
  acc.im += s.a;
}
Complex pow(const Complex& z, std::size_t n);
bool is_finite(const Complex& z);

}  // namespace qzero
