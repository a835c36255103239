#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qzero/complex.hpp"
#include "qzero/series.hpp"

namespace qzero {

enum class HalfAxis { kNegative, kPositive };
enum class ZeroClass { kNegativeReal, kPositiveReal, kComplexPair };
enum class Certificate { kRigorous, kHeuristic };

std::string to_string(HalfAxis h);
std::string to_string(ZeroClass c);
std::string to_string(Certificate c);

/// f(z) / z^shift known through a polynomial p and a bound |f/z^shift - p| <=
/// tail_bound on |z| <= radius. Dividing out the zero at the origin keeps the
/// counts below about the nontrivial zeros only.
struct CertifiedFunction {
  std::vector<Real> coeffs;
  std::size_t shift = 0;
  Real radius;
  Real tail_bound;
  SeriesTruncation truncation;
};

CertifiedFunction certify(const CoefficientFamily& fam, const Real& radius, const Real& eps);
/// An explicit polynomial: no tail, valid on any disk.
CertifiedFunction certify(const std::vector<Real>& poly, const Real& radius);

/// All roots, repeated by multiplicity, sorted by modulus then argument.
/// Aberth iteration from Newton-polygon starting points, then Newton polish;
/// every root meets |p(z)| <= 10^{5-d} sum_k |c_k| |z|^k (d = decimal digits).
/// Throws IllConditioned when polishing falls short, InvalidParameter for the
/// zero polynomial or degree above 10^4.
std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs);
std::vector<Complex> poly_roots(const std::vector<Real>& coeffs);

struct WindingResult {
  long count = 0;
  Certificate certificate = Certificate::kHeuristic;
  Real radius;  // the contour actually used (after any perturbation)
  std::size_t arcs = 0;
};

// Zeros of f inside |z - center| < radius by the argument principle. Each arc
// is certified by |p(mid)| > 2 (tail + Taylor slack + rounding); if that fails
// the radius is perturbed by +-1% and +-2% before ZeroOnContour is thrown.
WindingResult winding_count(const CertifiedFunction& f, const Complex& center, const Real& radius);
WindingResult winding_count(const CoefficientFamily& fam, const Complex& center, const Real& radius,
                            const Real& eps);

struct RealZero {
  Real location;
  Real enclosure_radius;  // a sign change of f is certified across location +- this
};

/// Sign-change zeros of f on (0, limit] of the half-axis, scanning the
/// geometric grid 10^-6 * ratio^i.
std::vector<RealZero> real_zeros_within(const CertifiedFunction& f, HalfAxis half, const Real& limit,
                                        const Real& grid_ratio);

/// The m smallest-modulus sign-change zeros on the half-axis, growing the
/// search radius by decades up to 10^6. Throws NotEnoughZerosFound.
std::vector<RealZero> real_axis_zeros(const CoefficientFamily& fam, HalfAxis half, std::size_t m, const Real& eps);

struct ZeroEntry {
  Complex location;
  Real enclosure_radius;
  ZeroClass classification;
  Real imag_crosscheck;  // |Im| of the matching root of the truncation
  bool certified = false;
};

struct ZeroReport {
  std::string source;  // family tag, or "polynomial"
  std::optional<CoefficientFamily> family;
  std::vector<Real> polynomial;
  HalfAxis half_axis = HalfAxis::kNegative;
  Real disk_radius;
  long winding_count = 0;  // zeros in the disk other than the origin
  std::size_t origin_multiplicity = 0;
  std::size_t bracket_count = 0;
  bool confined = false;
  std::vector<ZeroEntry> zeros;
  Certificate certificate = Certificate::kHeuristic;
  SeriesTruncation truncation;
};

/// Relative |Im| tolerance used to call a computed root real.
Real realness_tolerance();

// Winding count over the disk against sign-change brackets on the half-axis;
// confined iff they agree. The grid is refined (ratio 1.1, 1.01, 1.001)
// before a mismatch is accepted.
ZeroReport axis_confinement(const CoefficientFamily& fam, const Real& radius, HalfAxis half, const Real& eps);
ZeroReport axis_confinement(const std::vector<Real>& poly, const Real& radius, HalfAxis half);

/// Smallest K >= 2 from which the log-concavity ratio provably stays above 4:
/// the lower bound q^{-2 alpha} prod_i (1 - 1/(a_i + K1 - 1)) > 4 holds at some
/// K1 >= K and the ratio itself exceeds 4 on [K, K1). Throws HorizonExceeded
/// when no K1 <= 10^6 exists.
std::size_t theorem2_K0(const RatioQuad& fam, std::size_t horizon);
/// The ratio c_{k-1}^2 / (c_k c_{k-2}) of the unshifted family at k >= 2.
Real log_concavity_ratio(const RatioQuad& fam, std::size_t k);
/// q^{-2 alpha} prod_i (1 - 1/(a_i + K - 1)).
Real log_concavity_lower_bound(const RatioQuad& fam, std::size_t K);

}  // namespace qzero
