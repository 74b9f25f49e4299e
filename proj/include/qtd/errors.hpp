#pragma once

#include <stdexcept>
#include <string>

namespace qtd {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// -- configuration validation -------------------------------------------------

struct NonPositiveTemperature : Error { using Error::Error; };
struct NonPositiveRate : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct NonPositiveBohrFrequency : Error { using Error::Error; };
struct AuxBathUnsupported : Error { using Error::Error; };

// -- numerics -----------------------------------------------------------------

struct DomainError : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct KernelDimensionMismatch : Error { using Error::Error; };
struct NonConvergence : Error { using Error::Error; };
struct RateMismatch : Error { using Error::Error; };
struct StepSizeUnderflow : Error { using Error::Error; };
struct InvariantViolation : Error { using Error::Error; };
struct BothCurrentsZero : Error { using Error::Error; };

// -- serialization / interface -----------------------------------------------

struct ParseError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };
struct UnknownFigure : Error { using Error::Error; };
struct UnsupportedFormat : Error { using Error::Error; };
struct EmptyTable : Error { using Error::Error; };

}  // namespace qtd
