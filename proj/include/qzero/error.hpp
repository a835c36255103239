#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qzero {

enum class ErrorKind {
  InvalidParameter,
  DivergentInput,
  OutOfRange,
  NoConvergence,
  Degenerate,
  WindowTooLarge,
  DegenerateAllZero,
  IllConditioned,
  ZeroOnContour,
  NotEnoughZerosFound,
  HorizonExceeded,
  DomainViolation,
  IOFailure,
};

std::string_view to_string(ErrorKind kind);

/// Kinds that mean a certificate could not be obtained, as opposed to bad input.
inline bool is_inconclusive(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NoConvergence:
    case ErrorKind::IllConditioned:
    case ErrorKind::ZeroOnContour:
    case ErrorKind::NotEnoughZerosFound:
    case ErrorKind::HorizonExceeded:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qzero
