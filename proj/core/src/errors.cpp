#include "lowrank/errors.hpp"

namespace lowrank {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotSquare: return "NotSquare";
    case Errc::PoleOnSpectrum: return "PoleOnSpectrum";
    case Errc::PoleOnSupport: return "PoleOnSupport";
    case Errc::DegenerateMobius: return "DegenerateMobius";
    case Errc::NotUnitary: return "NotUnitary";
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NotNormal: return "NotNormal";
    case Errc::TargetNotReal: return "TargetNotReal";
    case Errc::IncompatibleTolerance: return "IncompatibleTolerance";
    case Errc::NotOnCurve: return "NotOnCurve";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::DistanceTooSmall: return "DistanceTooSmall";
    case Errc::Derogatory: return "Derogatory";
    case Errc::DuplicateNode: return "DuplicateNode";
    case Errc::DuplicateEigenvalue: return "DuplicateEigenvalue";
    case Errc::NodeCollision: return "NodeCollision";
    case Errc::ZeroCoefficient: return "ZeroCoefficient";
    case Errc::NotInterlacing: return "NotInterlacing";
    case Errc::TooSmall: return "TooSmall";
    case Errc::HypothesisViolated: return "HypothesisViolated";
    case Errc::ParseError: return "ParseError";
    case Errc::IllConditioned: return "IllConditioned";
    case Errc::CyclicVectorFailure: return "CyclicVectorFailure";
    case Errc::IllConditionedKrylov: return "IllConditionedKrylov";
    case Errc::NumericalLossOfUnitarity: return "NumericalLossOfUnitarity";
    case Errc::IsometryCheckFailed: return "IsometryCheckFailed";
    case Errc::CertificateFailed: return "CertificateFailed";
  }
  return "Unknown";
}

bool is_numerical(Errc code) noexcept {
  switch (code) {
    case Errc::IllConditioned:
    case Errc::CyclicVectorFailure:
    case Errc::IllConditionedKrylov:
    case Errc::NumericalLossOfUnitarity:
    case Errc::IsometryCheckFailed:
    case Errc::CertificateFailed:
      return true;
    default:
      return false;
  }
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code), detail_(what) {}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace lowrank
