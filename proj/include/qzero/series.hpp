#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "qzero/complex.hpp"
#include "qzero/qcore.hpp"

namespace qzero {

// The coefficient families. Constructors validate the parameter ranges and
// throw Error(InvalidParameter) on violation.

/// c_k = (a;q)_k q^{alpha k^2} / (q;q)_k
struct AqAlpha {
  AqAlpha(Real alpha, Real a, QParameter q);
  Real alpha;
  Real a;
  QParameter q;
};

/// c_k = prod_j (qj^{l_j};qj)_k/(qj;qj)_k * q^{alpha k^2} / prod_r (qr, qr^{nu_r+1}; qr)_k
struct MixedQ {
  MixedQ(Real alpha, QParameter q, std::vector<int> l, std::vector<QParameter> qj, std::vector<Real> nu,
         std::vector<QParameter> qr);
  Real alpha;
  QParameter q;
  std::vector<int> l;
  std::vector<QParameter> qj;
  std::vector<Real> nu;
  std::vector<QParameter> qr;
};

/// c_k = prod_j (l_j)_k / ((k!)^{m+n} prod_r (nu_r+1)_k), m = |l|, n = |nu| >= 1.
struct HyperLimit {
  HyperLimit(std::vector<int> l, std::vector<Real> nu);
  std::vector<int> l;
  std::vector<Real> nu;
};

/// c_k = prod_i (a_i)_k / prod_j (b_j)_k * q^{alpha k^2} for k >= start, else 0.
/// Requires 0 < q < 2^{-1/alpha}.
struct RatioQuad {
  RatioQuad(Real alpha, std::vector<Real> a, std::vector<Real> b, QParameter q, std::size_t start);
  Real alpha;
  std::vector<Real> a;
  std::vector<Real> b;
  QParameter q;
  std::size_t start;
};

/// c_n = h_n(x,y|q) q^{alpha n^2} / (q;q)_n
struct RogersSzegoSeries {
  RogersSzegoSeries(Real alpha, Real x, Real y, QParameter q);
  Real alpha;
  Real x;
  Real y;
  QParameter q;
};

/// c_n = (+-1)^n g_n(x,y|q) q^{alpha n^2} / (q;q)_n, alpha >= 1/2. The
/// alternating variant carries the (-1)^n sign, i.e. it is f(-z).
struct StieltjesWigertSeries {
  StieltjesWigertSeries(Real alpha, Real x, Real y, QParameter q, bool alternating = false);
  Real alpha;
  Real x;
  Real y;
  QParameter q;
  bool alternating;
};

using CoefficientFamily =
    std::variant<AqAlpha, MixedQ, HyperLimit, RatioQuad, RogersSzegoSeries, StieltjesWigertSeries>;

/// Short tag used on the command line and in serialized reports.
std::string family_tag(const CoefficientFamily& fam);

/// Copy of the family with every parameter carried at the current default
/// precision (arithmetic results take the widest operand precision).
CoefficientFamily promoted(const CoefficientFamily& fam);

/// Order of the zero at the origin: the RatioQuad start index, 0 otherwise.
std::size_t leading_order(const CoefficientFamily& fam);

// Direct evaluation from the defining products.
Real coefficient(const CoefficientFamily& fam, std::size_t k);
// c_0 .. c_{count-1}, computed incrementally.
std::vector<Real> coefficients(const CoefficientFamily& fam, std::size_t count);

Real rogers_szego(std::size_t n, const Real& x, const Real& y, const QParameter& q);
Real stieltjes_wigert_gn(std::size_t n, const Real& x, const Real& y, const QParameter& q);

enum class SwConvention {
  kSquare,            // q^{k^2}
  kSquarePlusLinear,  // q^{k^2 + k}
};
std::string to_string(SwConvention c);

/// S_n(x;q) = sum_k q^{e(k)} (-x)^k / ((q;q)_k (q;q)_{n-k})
Real sw_classical(std::size_t n, const Real& x, const QParameter& q, SwConvention convention);
Complex sw_classical(std::size_t n, const Complex& x, const QParameter& q, SwConvention convention);

struct SeriesTruncation {
  std::size_t N = 0;  // partial sum covers k = 0..N
  Real radius;
  Real tail_bound;  // >= |sum_{k>N} c_k z^k| on |z| <= radius
};

/// Upper bound for sum_{k>N} |c_k| radius^k given c_N, or +inf when the
/// ratio certificate (r < 1/2) does not hold at N.
Real tail_bound_at(const CoefficientFamily& fam, std::size_t N, const Real& c_N, const Real& radius);

/// Smallest certified N with tail_bound <= eps. Throws NoConvergence past 10^6 terms.
SeriesTruncation truncation_for(const CoefficientFamily& fam, const Real& radius, const Real& eps);

/// Truncation together with the coefficients c_0..c_N it certifies.
struct CertifiedPolynomial {
  std::vector<Real> coeffs;
  SeriesTruncation truncation;
};
CertifiedPolynomial certified_polynomial(const CoefficientFamily& fam, const Real& radius, const Real& eps);

/// sum_k c_k z^k with |error| <= eps (tail plus rounding). When eps is below
/// the value's ulp at working precision the result keeps the wider precision.
Complex evaluate(const CoefficientFamily& fam, const Complex& z, const Real& eps);
Real evaluate(const CoefficientFamily& fam, const Real& x, const Real& eps);

/// Finite-window proxy for limsup k log k / (-log |c_k|): the maximum over
/// k in [max(10, K/2), K] of log(k!) / (-log |c_k|), skipping zero
/// coefficients and |c_k| >= 1. Throws Degenerate when no k qualifies.
Real order_estimate(const CoefficientFamily& fam, std::size_t K);
/// k log k / (-log |c_k|) at a single k.
Real order_quotient(const CoefficientFamily& fam, std::size_t k);

/// Generic certified power-series summation used by the identity checks.
/// `term(k)` returns the k-th term (coefficient times power); `tail(N, terms)`
/// bounds |sum_{k>N} term(k)| from the terms computed so far, or returns +inf.
struct CertifiedSum {
  Complex value;
  Real error_bound;
  std::size_t terms = 0;
};
CertifiedSum certified_sum(const std::function<Complex(std::size_t)>& term,
                           const std::function<Real(std::size_t, const std::vector<Complex>&)>& tail,
                           const Real& eps, std::size_t max_terms = 1'000'000);

}  // namespace qzero
