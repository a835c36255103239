#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qzero/kernels.hpp"
#include "qzero/precision.hpp"
#include "qzero/series.hpp"

namespace qzero {

using Rational = boost::multiprecision::mpq_rational;

/// Exact parse of a decimal ("1.25", "-3e-2") or "p/q" string.
Rational parse_rational(std::string_view text);
std::vector<Rational> parse_rational_sequence(const std::vector<std::string>& texts);
Real to_real(const Rational& x);

struct MinorWitness {
  std::vector<unsigned> rows;
  std::vector<unsigned> cols;
  Real value;
};

struct PFVerdict {
  bool is_pf = true;
  unsigned order_tested = 0;
  unsigned window_tested = 0;
  std::optional<MinorWitness> witness;
};

// Minors of the window x window Toeplitz matrix T[i][j] = a_{j-i} (zero
// outside the list) are scanned by size, then rows, then columns, both in
// lexicographic order; the first one below -tol * max(1, H) is the witness,
// H being the product of the minor's row norms.
PFVerdict is_pf_window(const std::vector<Real>& seq, unsigned window, unsigned order, const Real& tol,
                       kernels::Execution exec = kernels::Execution::kParallel);
/// Exact variant: integer fraction-free elimination after clearing denominators.
PFVerdict is_pf_window(const std::vector<Rational>& seq, unsigned window, unsigned order, const Real& tol,
                       kernels::Execution exec = kernels::Execution::kParallel);

/// Smallest value over every minor of order <= `order` in the window (serial).
Real smallest_minor(const std::vector<Real>& seq, unsigned window, unsigned order);

/// A sequence known term by term; `available` caps how many terms exist.
struct LazySequence {
  std::function<Real(std::size_t)> term;
  std::optional<std::size_t> available;
};

/// Throws WindowTooLarge when the window needs more terms than are available.
PFVerdict is_pf_window(const LazySequence& seq, unsigned window, unsigned order, const Real& tol,
                       kernels::Execution exec = kernels::Execution::kParallel);

/// Taylor coefficients of a family, unbounded.
LazySequence family_sequence(const CoefficientFamily& fam);

/// Whether sum_k a_k z^k has only zeros with Re <= 0 and |Im| within the root
/// tolerance 10^{-(w-10)/deg} max(1, |z|), w the working digits. Leading and
/// trailing zero entries are stripped first.
bool pf_via_roots(const std::vector<Real>& seq);
bool pf_via_roots(const std::vector<Rational>& seq);

std::vector<Real> scale_sequence(const std::vector<Real>& seq, const Real& c);
std::vector<Rational> scale_sequence(const std::vector<Rational>& seq, const Rational& c);

}  // namespace qzero
