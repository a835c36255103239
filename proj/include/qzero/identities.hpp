#pragma once

#include <cstddef>
#include <string>

#include "qzero/complex.hpp"
#include "qzero/qcore.hpp"

namespace qzero {

// Each check computes its two sides along disjoint paths (certified series
// sums against q-Pochhammer products) and passes iff abs_residual <= tolerance.
// For the inequality checks lhs/rhs carry the sharpest comparison and the
// residual is the relative violation, zero when the inequality holds.
struct IdentityReport {
  std::string name;
  Complex lhs;
  Complex rhs;
  Real abs_residual;
  Real tolerance;
  bool pass = false;
  std::string detail;
  std::string variant;  // matching right-hand side, for checks that compare several
};

/// sum_k (a;q)_k x^k / (q;q)_k against (ax;q)_inf / (x;q)_inf. DomainViolation for |x| >= 1.
IdentityReport q_binomial_identity(const Complex& a, const Complex& x, const QParameter& q, const Real& eps);

/// sum_k (q^l;q)_k q^{-lk} z^k / (q;q)_k against 1 / (z q^{-l};q)_l. Needs |z q^{-l}| < 1.
IdentityReport collapse_check(int l, const Complex& z, const QParameter& q, const Real& eps);

/// sum_n h_n(x,y|q) t^n / (q;q)_n against 1 / ((xt;q)_inf (yt;q)_inf). Needs max(|xt|, |yt|) < 1.
IdentityReport rs_generating_function(const Real& x, const Real& y, const QParameter& q, const Complex& t,
                                      const Real& eps);

// sum_n (-1)^n g_n(x,y|q) q^{n(n-1)/2} t^n / (q;q)_n against both
// (xt,yt;q)_inf and the t-free (x,y;q)_inf. `variant` names the form that
// matched: "(xt,yt;q)_inf", "(x,y;q)_inf", "both" or "none"; the residual is
// that of the closer form.
IdentityReport sw_generating_function(const Real& x, const Real& y, const QParameter& q, const Complex& t,
                                      const Real& eps);

// Two reductions of the A_q family. A_q^(1)(0; z), summed through the family
// evaluator, is compared with a direct sum of q^{k^2} z^k / (q;q)_k. The
// terminating A_q^(1/2)(q^{-n}; z) is compared with
// (q;q)_n S_n(z q^{s-n}; q) for s = +-1/2 under both exponent conventions;
// `variant` records the matching "s=..,k^2" pair.
IdentityReport aq_special_cases(std::size_t n, const Complex& z, const QParameter& q, const Real& eps);

/// At q_j = 1 - 2^{-j} and q_{j+1}: both distances to the q -> 1 limits,
/// |(q^l;q)_k/(q;q)_k - (l)_k/k!| and |(1-q)^{2k}/(q,q^{nu+1};q)_k - 1/(k!(nu+1)_k)|,
/// must shrink by a factor of at least 1.8. Needs 1 <= j <= 40.
IdentityReport hopital_limits(int l, const Real& nu, std::size_t k, int j);

/// l! q^{l(l-1)/2} <= (q;q)_l / (1-q)^l <= l!, and (1-q)^l / (q;q)_l <= q^{-l^2/2} / l!.
IdentityReport pochhammer_inequality(std::size_t l, const QParameter& q);

/// |h_n(x,y|q)| <= a^n / (q;q)_inf for n <= n_max (at most 200), with a = 1/q
/// when |x|, |y| <= 1, max(|x|,|y|)/q when exactly one exceeds 1, |xy|/q when both do.
IdentityReport hn_bound_check(const Real& x, const Real& y, const QParameter& q, std::size_t n_max);
Real hn_bound_constant(const Real& x, const Real& y, const QParameter& q);

}  // namespace qzero
