#pragma once

#include <stdexcept>
#include <string>

namespace orbcoh {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidOrderError : public Error { using Error::Error; };
class GroupAxiomError : public Error { using Error::Error; };

/// Raised by cohomology_at when d_out * d_in != 0.
class NotAComplexError : public Error { using Error::Error; };
class DimensionMismatchError : public Error { using Error::Error; };

/// Structural problems in an orbifold-complex document.
class ComplexFormatError : public Error { using Error::Error; };
class UnknownSimplexError : public Error { using Error::Error; };
class MissingMuError : public Error { using Error::Error; };
class NoSimplexError : public Error { using Error::Error; };

class ChartInconsistencyError : public Error { using Error::Error; };
class DerivationError : public Error { using Error::Error; };
class ChainMismatchError : public Error { using Error::Error; };

class LocalSystemError : public Error { using Error::Error; };
class IncoherentSystemError : public Error { using Error::Error; };

/// Malformed input text (JSON syntax or schema shape).
class ParseError : public Error { using Error::Error; };

/// A basis or matrix would exceed the configured size cap.
class ResourceCapError : public Error { using Error::Error; };

} // namespace orbcoh
