#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hblab {

/// Machine-readable failure categories. The CLI prints `to_string(kind)` as the
/// reason field and maps every domain error to exit code 1.
enum class ErrorKind {
  InvalidArgument,
  Pole,
  BoundaryPole,
  OutsideDisk,
  DegreeZero,
  ZeroPolynomial,
  NegativeWeight,
  OddCircleMultiplicity,
  RootPairing,
  ExtremeB,
  NotContractive,
  ConstantB,
  SpaceMismatch,
  NotAnAtom,
  NotOuter,
  NotNormalized,
  NotInJ,
  OnCircle,
  CoverageGap,
  BoundFailure,
  RefitResidual,
  ExactUnavailable,
  Parse,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hblab
