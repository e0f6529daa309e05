#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace imean {

enum class Errc {
  GroundMismatch,
  GroundTooLarge,
  InvalidArgument,
  NotCompatible,
  NotOrthogonal,
  NotAnElement,
  CapExceeded,
  ZeroIdempotent,
  BaseMismatch,
  ShapeMismatch,
  NotBijective,
  PartitionMismatch,
  InternalInvariantViolation,
  ZeroMass,
  InvalidPencil,
  NotPiecewiseFactorizable,
  DimensionMismatch,
  ZeroColumn,
  BadBase,
  NotNormalized,
  NotUHF,
  OverflowGuard,
  BadPencil,
  BadWitness,
  MalformedInput,
};

std::string_view to_string(Errc code) noexcept;

// Every domain failure in the library is reported through this one type; the
// code says which contract was broken.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace imean
