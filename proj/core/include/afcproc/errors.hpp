#ifndef AFCPROC_ERRORS_HPP
#define AFCPROC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace afcproc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Field contains non-finite samples or is structurally inconsistent.
struct InvalidFieldError : Error { using Error::Error; };

// Operation requires a nonzero field.
struct EmptyFieldError : Error { using Error::Error; };

// |transfer| exceeds 1 for an element declared passive, or a program's
// combined echo/background response would amplify.
struct PassivityError : Error { using Error::Error; };

// Operation would move significant spectral content past the grid's
// Nyquist edge.
struct NyquistError : Error { using Error::Error; };

// Parameter outside the hardware range (e.g. serrodyne shift beyond +-5 GHz).
struct RangeError : Error { using Error::Error; };

// Malformed modulator or comb program (overlapping windows/bands, ...).
struct ProgramError : Error { using Error::Error; };

// Requested delay or span not representable on the grid.
struct GridError : Error { using Error::Error; };

// Qubit amplitudes not normalized.
struct NormalizationError : Error { using Error::Error; };

// Pulse would lose more than the allowed energy fraction to grid truncation.
struct PulseOutsideGridError : Error { using Error::Error; };

// Designer target violates a hardware limit; message names the binding
// constraint.
struct InfeasibleError : Error { using Error::Error; };

// Scenario config parse/validation failure; message names the offending field.
struct ConfigError : Error { using Error::Error; };

}  // namespace afcproc

#endif
