#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nearspace {

enum class ErrorKind {
  NotPrime,
  TooLarge,
  DivisionByZero,
  InvalidDicksonPair,
  AxiomValidationFailed,
  DimensionMismatch,
  NotAMember,
  InternalInconsistency,
  CapExceeded,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::InvalidDicksonPair: return "InvalidDicksonPair";
    case ErrorKind::AxiomValidationFailed: return "AxiomValidationFailed";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotAMember: return "NotAMember";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::CapExceeded: return "CapExceeded";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (and tests) can branch on it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace nearspace
