#include "qzero/precision.hpp"

#include <cstdlib>
#include <sstream>

#include "qzero/error.hpp"

namespace qzero {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::DivergentInput: return "DivergentInput";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::WindowTooLarge: return "WindowTooLarge";
    case ErrorKind::DegenerateAllZero: return "DegenerateAllZero";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::ZeroOnContour: return "ZeroOnContour";
    case ErrorKind::NotEnoughZerosFound: return "NotEnoughZerosFound";
    case ErrorKind::HorizonExceeded: return "HorizonExceeded";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::IOFailure: return "IOFailure";
  }
  return "Unknown";
}

PrecisionContext::PrecisionContext(unsigned decimal_digits, unsigned guard_digits)
    : decimal_digits_(decimal_digits), guard_digits_(guard_digits) {
  if (decimal_digits < kMinDigits) {
    throw Error(ErrorKind::InvalidParameter,
                "decimal_digits must be >= " + std::to_string(kMinDigits));
  }
  if (guard_digits == 0) {
    throw Error(ErrorKind::InvalidParameter, "guard_digits must be positive");
  }
}

Real PrecisionContext::check_tolerance() const {
  return pow10(-static_cast<int>(decimal_digits_) + 10);
}

Real PrecisionContext::unit_roundoff() const {
  return pow10(-static_cast<int>(working_digits()));
}

PrecisionContext PrecisionContext::from_environment() {
  const char* env = std::getenv("QZERO_DIGITS");
  if (env == nullptr || *env == '\0') return PrecisionContext{};
  char* end = nullptr;
  long digits = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || digits <= 0) {
    throw Error(ErrorKind::InvalidParameter, std::string("QZERO_DIGITS is not a positive integer: ") + env);
  }
  return PrecisionContext(static_cast<unsigned>(digits));
}

namespace {

PrecisionContext& global_context() {
  static PrecisionContext ctx = [] {
    PrecisionContext c;
    Real::default_precision(c.working_digits());
    return c;
  }();
  return ctx;
}

[[maybe_unused]] const bool kContextInitialised = (global_context(), true);

}  // namespace

void set_precision(const PrecisionContext& ctx) {
  global_context() = ctx;
  Real::default_precision(ctx.working_digits());
}

const PrecisionContext& current_precision() { return global_context(); }

ScopedPrecision::ScopedPrecision(const PrecisionContext& ctx) : saved_(current_precision()) {
  set_precision(ctx);
}

ScopedPrecision::~ScopedPrecision() { set_precision(saved_); }

Real parse_real(std::string_view text) {
  (void)current_precision();
  std::string s(text);
  auto trim = [](std::string& t) {
    const auto b = t.find_first_not_of(" \t\n\r");
    const auto e = t.find_last_not_of(" \t\n\r");
    t = (b == std::string::npos) ? std::string{} : t.substr(b, e - b + 1);
  };
  trim(s);
  if (s.empty()) throw Error(ErrorKind::InvalidParameter, "empty number");
  try {
    if (auto slash = s.find('/'); slash != std::string::npos) {
      std::string num = s.substr(0, slash);
      std::string den = s.substr(slash + 1);
      trim(num);
      trim(den);
      Real d(den);
      if (d == 0) throw Error(ErrorKind::InvalidParameter, "zero denominator in '" + s + "'");
      return Real(num) / d;
    }
    return Real(s);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const Error*>(&e) != nullptr) throw;
    throw Error(ErrorKind::InvalidParameter, "cannot parse number '" + s + "'");
  }
}

std::string to_decimal(const Real& x, unsigned digits) {
  if (x == 0) return "0";
  std::ostringstream os;
  os << std::scientific << std::setprecision(static_cast<int>(digits) - 1) << x;
  return os.str();
}

std::string to_decimal(const Real& x) { return to_decimal(x, current_precision().decimal_digits()); }

Real pow10(int exponent) { return boost::multiprecision::pow(Real(10), exponent); }

bool is_finite(const Real& x) { return boost::multiprecision::isfinite(x); }

}  // namespace qzero
