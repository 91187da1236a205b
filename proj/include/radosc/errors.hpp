#pragma once
#include <stdexcept>
#include <string>

namespace radosc {

/// Failure categories raised by the library.  Construction/configuration
/// problems and numerical-domain problems share one exception type; callers
/// that need to distinguish them switch on the code.
enum class ErrorCode {
  // parameter / configuration validation
  NonPositiveMass,
  NegativeBareMass,
  NonFiniteInput,
  BadConfig,
  // response evaluation
  PoleEvaluation,
  WrongCutoff,
  UnsupportedFormFactor,
  NegativeTime,
  InconsistentWavevector,
  // scattering
  ZeroRadius,
  NotDilute,
  // causality analysis
  NonRationalModel,
  BandNotCovered,
  InsufficientResolution,
  // time domain
  StepTooLarge,
  UnsupportedOmega0,
  GridMismatch,
  TooShort,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

/// Stable textual tag, used in CLI diagnostics.
const char* error_code_name(ErrorCode code) noexcept;

/// True for codes that indicate bad user input rather than a numerical
/// condition hit during evaluation (drives the CLI exit-code contract).
bool is_config_error(ErrorCode code) noexcept;

} // namespace radosc
