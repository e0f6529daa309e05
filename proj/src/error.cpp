#include "imean/error.hpp"

namespace imean {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::GroundMismatch: return "GroundMismatch";
    case Errc::GroundTooLarge: return "GroundTooLarge";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NotCompatible: return "NotCompatible";
    case Errc::NotOrthogonal: return "NotOrthogonal";
    case Errc::NotAnElement: return "NotAnElement";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::ZeroIdempotent: return "ZeroIdempotent";
    case Errc::BaseMismatch: return "BaseMismatch";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::NotBijective: return "NotBijective";
    case Errc::PartitionMismatch: return "PartitionMismatch";
    case Errc::InternalInvariantViolation: return "InternalInvariantViolation";
    case Errc::ZeroMass: return "ZeroMass";
    case Errc::InvalidPencil: return "InvalidPencil";
    case Errc::NotPiecewiseFactorizable: return "NotPiecewiseFactorizable";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::ZeroColumn: return "ZeroColumn";
    case Errc::BadBase: return "BadBase";
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::NotUHF: return "NotUHF";
    case Errc::OverflowGuard: return "OverflowGuard";
    case Errc::BadPencil: return "BadPencil";
    case Errc::BadWitness: return "BadWitness";
    case Errc::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

}  // namespace imean
