#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <string_view>

namespace qzero {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

/// Working precision policy. Every computation runs at decimal_digits +
/// guard_digits; results are reported at decimal_digits.
class PrecisionContext {
 public:
  static constexpr unsigned kDefaultDigits = 50;
  static constexpr unsigned kDefaultGuard = 20;
  static constexpr unsigned kMinDigits = 30;

  explicit PrecisionContext(unsigned decimal_digits = kDefaultDigits,
                            unsigned guard_digits = kDefaultGuard);

  unsigned decimal_digits() const noexcept { return decimal_digits_; }
  unsigned guard_digits() const noexcept { return guard_digits_; }
  unsigned working_digits() const noexcept { return decimal_digits_ + guard_digits_; }

  /// 10^-(decimal_digits - 10): the signed tolerance used by checks.
  Real check_tolerance() const;
  /// 10^-working_digits.
  Real unit_roundoff() const;

  /// Reads QZERO_DIGITS, falling back to the default.
  static PrecisionContext from_environment();

 private:
  unsigned decimal_digits_;
  unsigned guard_digits_;
};

// The MPFR default precision is process-wide in this Boost version. Set it
// from the orchestrating thread before any parallel region starts.
void set_precision(const PrecisionContext& ctx);
const PrecisionContext& current_precision();

class ScopedPrecision {
 public:
  explicit ScopedPrecision(const PrecisionContext& ctx);
  ~ScopedPrecision();
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  PrecisionContext saved_;
};

/// Parses a decimal string ("0.25", "-1e-3") or a rational "p/q".
Real parse_real(std::string_view text);

/// Scientific decimal string with `digits` significant digits; zero prints as "0".
std::string to_decimal(const Real& x, unsigned digits);
std::string to_decimal(const Real& x);  // at current decimal_digits

Real pow10(int exponent);
bool is_finite(const Real& x);

}  // namespace qzero
