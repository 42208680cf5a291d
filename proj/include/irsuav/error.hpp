// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace irsuav {

enum class ErrorKind {
  SingularPencil,
  NonFinite,
  NoSignChange,
  OutOfRange,
  DegenerateGeometry,
  DimensionMismatch,
  InfeasibleRate,
  InfeasibleStart,
  BoxViolation,
  ConfigError,
  SchemaError,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SingularPencil: return "SingularPencil";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::NoSignChange: return "NoSignChange";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::DegenerateGeometry: return "DegenerateGeometry";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InfeasibleRate: return "InfeasibleRate";
    case ErrorKind::InfeasibleStart: return "InfeasibleStart";
    case ErrorKind::BoxViolation: return "BoxViolation";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

}  // namespace irsuav
