#pragma once

// Hot loops shared by the zeros and totalpos modules. Each kernel exists as a
// serial reference and an OpenMP version with identical results; the
// top-level modules call the parallel ones.
//
// The MPFR default precision is process-wide, so set it before calling a
// parallel kernel and leave it alone until the kernel returns.

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "qzero/complex.hpp"

namespace qzero::kernels {

/// Local certificate for one contour arc around `mid`.
struct ArcCheck {
  Complex value;   // p(mid)
  Real slack;      // sum_{j>=1} |t_j| h^j, t_j the Taylor coefficients of p at mid
  Real rounding;   // bound on the floating-point error in value and slack
};

/// One simultaneous-iteration step for root i.
struct AberthStep {
  Complex correction;  // subtract from the current iterate
  Real residual;       // |p(z_i)|
  Real majorant;       // sum_k |c_k| |z_i|^k
};

/// A minor found by enumeration, with the index sets it came from.
struct MinorHit {
  std::vector<unsigned> rows;
  std::vector<unsigned> cols;
  Real value;
};

/// Returns the minor's value when it counts as a violation.
using MinorTest = std::function<std::optional<Real>(const std::vector<unsigned>& rows,
                                                    const std::vector<unsigned>& cols)>;

/// All size-k subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<unsigned>> combinations(unsigned n, unsigned k);

namespace serial {

std::vector<Complex> evaluate_points(const std::vector<Complex>& coeffs, const std::vector<Complex>& points);

std::vector<ArcCheck> certify_arcs(const std::vector<Complex>& coeffs, const std::vector<Complex>& mids,
                                   const std::vector<Real>& half_widths);

std::vector<AberthStep> aberth_sweep(const std::vector<Complex>& coeffs, const std::vector<Complex>& roots,
                                     const std::vector<char>& active);

/// First violating minor of the given size, rows then columns in lexicographic order.
std::optional<MinorHit> first_minor_violation(unsigned window, unsigned size, const MinorTest& test);

}  // namespace serial

namespace parallel {

std::vector<Complex> evaluate_points(const std::vector<Complex>& coeffs, const std::vector<Complex>& points);

std::vector<ArcCheck> certify_arcs(const std::vector<Complex>& coeffs, const std::vector<Complex>& mids,
                                   const std::vector<Real>& half_widths);

std::vector<AberthStep> aberth_sweep(const std::vector<Complex>& coeffs, const std::vector<Complex>& roots,
                                     const std::vector<char>& active);

std::optional<MinorHit> first_minor_violation(unsigned window, unsigned size, const MinorTest& test);

}  // namespace parallel

enum class Execution { kSerial, kParallel };

inline std::optional<MinorHit> first_minor_violation(Execution exec, unsigned window, unsigned size,
                                                     const MinorTest& test) {
  return exec == Execution::kSerial ? serial::first_minor_violation(window, size, test)
                                    : parallel::first_minor_violation(window, size, test);
}

}  // namespace qzero::kernels
