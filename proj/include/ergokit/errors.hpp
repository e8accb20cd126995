#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ergokit {

enum class ErrorCode {
  NotHermitian,
  NotUnitary,
  NoConvergence,
  DimensionMismatch,
  LengthMismatch,
  InvalidArgument,
  InvalidState,
  InvalidSpectrum,
  InvalidBlochParameters,
  InvalidCoefficients,
  NotEquispaced,
  EntropyOutOfRange,
  DegenerateSpectrum,
  StructureMismatch,
  WrongDimension,
  NotPure,
  WcfRequiresTripartite,
  ParseError,
  IoError,
};

std::string_view code_name(ErrorCode code) noexcept;

/// True for failures of a numerical routine rather than of the input.
constexpr bool is_numerical(ErrorCode code) noexcept {
  return code == ErrorCode::NoConvergence;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ergokit
