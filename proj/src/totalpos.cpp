#include "qzero/totalpos.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "qzero/error.hpp"
#include "qzero/zeros.hpp"

namespace qzero {

namespace bmp = boost::multiprecision;
using bmp::mpz_int;

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto bad = [&] { return Error(ErrorKind::InvalidParameter, "not a rational: '" + std::string(text) + "'"); };
  if (text.empty()) throw bad();

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const Rational num = parse_rational(text.substr(0, slash));
    const Rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) throw bad();
    return num / den;
  }

  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') negative = text[i++] == '-';
  std::string digits;
  long exponent = 0;
  bool seen_digit = false, seen_point = false;
  for (; i < text.size(); ++i) {
    const char ch = text[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits += ch;
      seen_digit = true;
      if (seen_point) --exponent;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw bad();
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') throw bad();
    const std::string rest(text.substr(i + 1));
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(rest, &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used != rest.size() || e > 100000 || e < -100000) throw bad();
    exponent += e;
  }
  // mpz parsing treats a leading 0 as an octal prefix
  const auto nonzero = digits.find_first_not_of('0');
  Rational value{mpz_int(nonzero == std::string::npos ? std::string("0") : digits.substr(nonzero))};
  const mpz_int scale = bmp::pow(mpz_int(10), static_cast<unsigned>(std::labs(exponent)));
  if (exponent >= 0) value *= Rational(scale);
  else value /= Rational(scale);
  return negative ? Rational(-value) : value;
}

std::vector<Rational> parse_rational_sequence(const std::vector<std::string>& texts) {
  std::vector<Rational> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(parse_rational(t));
  return out;
}

Real to_real(const Rational& x) {
  Real r;
  mpfr_set_q(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

namespace {

// Minors that need no evaluation. If some row starts below the diagonal of the
// selected columns, the lower-left block of zeros forces the minor to vanish.
// If rows[0] > 0, shifting every index down gives an equal minor that comes
// earlier in the scan, so the first witness is never lost.
bool skippable(const std::vector<unsigned>& rows, const std::vector<unsigned>& cols) {
  if (rows[0] > 0) return true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] > cols[i]) return true;
  }
  return false;
}

template <typename T>
const T* toeplitz_entry(const std::vector<T>& seq, unsigned row, unsigned col) {
  if (col < row || col - row >= seq.size()) return nullptr;
  return &seq[col - row];
}

Real hadamard_bound(const std::vector<Real>& seq, const std::vector<unsigned>& rows,
                    const std::vector<unsigned>& cols) {
  Real bound(1);
  for (unsigned r : rows) {
    Real norm(0);
    for (unsigned c : cols) {
      if (const Real* a = toeplitz_entry(seq, r, c)) norm += *a * *a;
    }
    bound *= bmp::sqrt(norm);
  }
  return bound;
}

Real pivoted_determinant(std::vector<Real> m, std::size_t n) {
  Real det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (bmp::abs(m[i * n + k]) > bmp::abs(m[pivot * n + k])) pivot = i;
    }
    if (m[pivot * n + k] == 0) return Real(0);
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[k * n + j], m[pivot * n + j]);
      det = -det;
    }
    det *= m[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const Real factor = m[i * n + k] / m[k * n + k];
      if (factor == 0) continue;
      for (std::size_t j = k + 1; j < n; ++j) m[i * n + j] -= factor * m[k * n + j];
    }
  }
  return det;
}

template <typename T>
T bareiss_determinant(std::vector<T> m, std::size_t n) {
  T previous(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k * n + k] == 0) {
      std::size_t i = k + 1;
      while (i < n && m[i * n + k] == 0) ++i;
      if (i == n) return T(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(m[k * n + j], m[i * n + j]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i * n + j] = (m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j]) / previous;
      }
    }
    previous = m[k * n + k];
  }
  const T det = m[n * n - 1];
  return negate ? T(-det) : det;
}

// Sequence scaled to integers by the common denominator, with the bit sizes
// used to pick the machine-integer path.
struct IntegerSequence {
  std::vector<mpz_int> values;
  std::vector<__int128> small;
  std::vector<double> bits;  // log2 |value|, -inf for zero
  Rational denominator;
};

IntegerSequence clear_denominators(const std::vector<Rational>& seq) {
  mpz_int lcm(1);
  for (const auto& a : seq) lcm = bmp::lcm(lcm, mpz_int(bmp::denominator(a)));
  IntegerSequence out;
  out.denominator = Rational(lcm);
  for (const auto& a : seq) {
    const mpz_int v = mpz_int(bmp::numerator(a)) * (lcm / mpz_int(bmp::denominator(a)));
    out.values.push_back(v);
    const bool fits = bmp::msb(bmp::abs(v) + 1) < 62;
    out.small.push_back(fits ? static_cast<__int128>(v.convert_to<long long>()) : 0);
    if (v == 0) {
      out.bits.push_back(-INFINITY);
    } else {
      long exp = 0;
      const double mant = mpz_get_d_2exp(&exp, v.backend().data());
      out.bits.push_back(static_cast<double>(exp) + std::log2(std::fabs(mant)));
    }
  }
  return out;
}

PFVerdict scan(unsigned window, unsigned order, kernels::Execution exec, const kernels::MinorTest& test) {
  if (window == 0 || order == 0) throw Error(ErrorKind::InvalidParameter, "window and order must be positive");
  PFVerdict verdict;
  verdict.window_tested = window;
  verdict.order_tested = std::min(order, window);
  for (unsigned size = 1; size <= verdict.order_tested; ++size) {
    if (auto hit = kernels::first_minor_violation(exec, window, size, test)) {
      verdict.is_pf = false;
      verdict.witness = MinorWitness{std::move(hit->rows), std::move(hit->cols), std::move(hit->value)};
      return verdict;
    }
  }
  return verdict;
}

void require_sequence(std::size_t size) {
  if (size == 0) throw Error(ErrorKind::InvalidParameter, "empty sequence");
}

}  // namespace

PFVerdict is_pf_window(const std::vector<Real>& seq, unsigned window, unsigned order, const Real& tol,
                       kernels::Execution exec) {
  require_sequence(seq.size());
  for (const auto& a : seq) {
    if (!is_finite(a)) throw Error(ErrorKind::InvalidParameter, "sequence entry is not finite");
  }
  const kernels::MinorTest test = [&](const std::vector<unsigned>& rows,
                                      const std::vector<unsigned>& cols) -> std::optional<Real> {
    if (skippable(rows, cols)) return std::nullopt;
    const std::size_t n = rows.size();
    std::vector<Real> m(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (const Real* a = toeplitz_entry(seq, rows[i], cols[j])) m[i * n + j] = *a;
      }
    }
    Real det = pivoted_determinant(std::move(m), n);
    if (!(det < 0)) return std::nullopt;
    if (det < -tol * std::max(Real(1), hadamard_bound(seq, rows, cols))) return det;
    return std::nullopt;
  };
  return scan(window, order, exec, test);
}

PFVerdict is_pf_window(const std::vector<Rational>& seq, unsigned window, unsigned order, const Real& tol,
                       kernels::Execution exec) {
  require_sequence(seq.size());
  const IntegerSequence ints = clear_denominators(seq);
  std::vector<Real> reals;
  for (const auto& a : seq) reals.push_back(to_real(a));

  const kernels::MinorTest test = [&](const std::vector<unsigned>& rows,
                                      const std::vector<unsigned>& cols) -> std::optional<Real> {
    if (skippable(rows, cols)) return std::nullopt;
    const std::size_t n = rows.size();
    // log2 of the Hadamard bound; products of two minors must fit in 127 bits
    double log_bound = 0;
    for (unsigned r : rows) {
      double widest = -INFINITY;
      unsigned nonzero = 0;
      for (unsigned c : cols) {
        if (toeplitz_entry(seq, r, c) == nullptr) continue;
        const double b = ints.bits[c - r];
        if (b == -INFINITY) continue;
        widest = std::max(widest, b);
        ++nonzero;
      }
      if (nonzero == 0) return std::nullopt;
      log_bound += widest + 0.5 * std::log2(static_cast<double>(nonzero));
    }

    int sign = 0;
    if (log_bound < 61) {
      std::vector<__int128> m(n * n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (toeplitz_entry(seq, rows[i], cols[j])) m[i * n + j] = ints.small[cols[j] - rows[i]];
        }
      }
      const __int128 det = bareiss_determinant(std::move(m), n);
      sign = det < 0 ? -1 : 0;
    } else {
      std::vector<mpz_int> m(n * n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (toeplitz_entry(seq, rows[i], cols[j])) m[i * n + j] = ints.values[cols[j] - rows[i]];
        }
      }
      const mpz_int det = bareiss_determinant(std::move(m), n);
      sign = det < 0 ? -1 : 0;
    }
    if (sign == 0) return std::nullopt;

    // the exact value is only needed once the sign says violation
    std::vector<Rational> m(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (const Rational* a = toeplitz_entry(seq, rows[i], cols[j])) m[i * n + j] = *a;
      }
    }
    const Real value = to_real(bareiss_determinant(std::move(m), n));
    if (value < -tol * std::max(Real(1), hadamard_bound(reals, rows, cols))) return value;
    return std::nullopt;
  };
  return scan(window, order, exec, test);
}

Real smallest_minor(const std::vector<Real>& seq, unsigned window, unsigned order) {
  require_sequence(seq.size());
  Real smallest = std::numeric_limits<Real>::infinity();
  const kernels::MinorTest test = [&](const std::vector<unsigned>& rows,
                                      const std::vector<unsigned>& cols) -> std::optional<Real> {
    if (skippable(rows, cols)) {
      if (rows[0] == 0) smallest = std::min(smallest, Real(0));
      return std::nullopt;
    }
    const std::size_t n = rows.size();
    std::vector<Real> m(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (const Real* a = toeplitz_entry(seq, rows[i], cols[j])) m[i * n + j] = *a;
      }
    }
    smallest = std::min(smallest, pivoted_determinant(std::move(m), n));
    return std::nullopt;
  };
  for (unsigned size = 1; size <= std::min(order, window); ++size) {
    kernels::serial::first_minor_violation(window, size, test);
  }
  return smallest;
}

PFVerdict is_pf_window(const LazySequence& seq, unsigned window, unsigned order, const Real& tol,
                       kernels::Execution exec) {
  if (seq.available && *seq.available < window) {
    throw Error(ErrorKind::WindowTooLarge, "window " + std::to_string(window) + " needs more than the " +
                                               std::to_string(*seq.available) + " available terms");
  }
  std::vector<Real> terms;
  terms.reserve(window);
  for (std::size_t k = 0; k < window; ++k) terms.push_back(seq.term(k));
  return is_pf_window(terms, window, order, tol, exec);
}

LazySequence family_sequence(const CoefficientFamily& fam) {
  return LazySequence{[fam](std::size_t k) { return coefficient(fam, k); }, std::nullopt};
}

bool pf_via_roots(const std::vector<Real>& seq) {
  require_sequence(seq.size());
  for (const auto& a : seq) {
    if (!is_finite(a) || a < 0) throw Error(ErrorKind::InvalidParameter, "entries must be finite and nonnegative");
  }
  const auto first = std::find_if(seq.begin(), seq.end(), [](const Real& a) { return a != 0; });
  if (first == seq.end()) throw Error(ErrorKind::DegenerateAllZero, "every entry is zero");
  const auto last = std::find_if(seq.rbegin(), seq.rend(), [](const Real& a) { return a != 0; }).base();
  const std::vector<Real> poly(first, last);
  const std::size_t degree = poly.size() - 1;
  if (degree == 0) return true;

  // a root of multiplicity m moves by about u^{1/m}; allow the worst case m = degree
  const long digits = static_cast<long>(current_precision().working_digits()) - 10;
  const Real tol = bmp::pow(Real(10), Real(-digits) / Real(degree));
  for (const Complex& z : poly_roots(poly)) {
    const Real scale = std::max(Real(1), abs(z));
    if (z.re > tol * scale || bmp::abs(z.im) > tol * scale) return false;
  }
  return true;
}

bool pf_via_roots(const std::vector<Rational>& seq) {
  std::vector<Real> reals;
  for (const auto& a : seq) reals.push_back(to_real(a));
  return pf_via_roots(reals);
}

std::vector<Real> scale_sequence(const std::vector<Real>& seq, const Real& c) {
  if (!(c > 0)) throw Error(ErrorKind::InvalidParameter, "scale must be positive");
  std::vector<Real> out;
  Real power(1);
  for (const auto& a : seq) {
    out.push_back(a * power);
    power *= c;
  }
  return out;
}

std::vector<Rational> scale_sequence(const std::vector<Rational>& seq, const Rational& c) {
  if (!(c > 0)) throw Error(ErrorKind::InvalidParameter, "scale must be positive");
  std::vector<Rational> out;
  Rational power(1);
  for (const auto& a : seq) {
    out.push_back(a * power);
    power *= c;
  }
  return out;
}

}  // namespace qzero
