#pragma once

#include <stdexcept>

namespace screedsolo {

// Base class for every error this library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidParams : Error { using Error::Error; };
struct DecodeFailure : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct EmptyPassword : Error { using Error::Error; };
struct AuthenticationFailure : Error { using Error::Error; };
struct QuantBitsOutOfRange : Error { using Error::Error; };
struct SymbolOutOfRange : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };
struct Base64Error : Error { using Error::Error; };
struct InflateError : Error { using Error::Error; };
struct PayloadTooLarge : Error { using Error::Error; };
struct FrameError : Error { using Error::Error; };
struct EnvelopeParseError : Error { using Error::Error; };
struct InsufficientCapacity : Error { using Error::Error; };
struct InvalidQuery : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

} // namespace screedsolo
