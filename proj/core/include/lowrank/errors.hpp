#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lowrank {

/// Failure codes shared by every module. Precondition failures describe bad
/// input; numerical failures mean a computed certificate did not meet its
/// threshold.
enum class Errc {
  DimensionMismatch,
  NotSquare,
  PoleOnSpectrum,
  PoleOnSupport,
  DegenerateMobius,
  NotUnitary,
  NotHermitian,
  NotNormal,
  TargetNotReal,
  IncompatibleTolerance,
  NotOnCurve,
  InvalidArgument,
  PreconditionViolated,
  DistanceTooSmall,
  Derogatory,
  DuplicateNode,
  DuplicateEigenvalue,
  NodeCollision,
  ZeroCoefficient,
  NotInterlacing,
  TooSmall,
  HypothesisViolated,
  ParseError,
  // numerical
  IllConditioned,
  CyclicVectorFailure,
  IllConditionedKrylov,
  NumericalLossOfUnitarity,
  IsometryCheckFailed,
  CertificateFailed,
};

std::string_view errc_name(Errc code) noexcept;

/// True for codes that signal a failed numerical certificate rather than
/// invalid input.
bool is_numerical(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace lowrank
