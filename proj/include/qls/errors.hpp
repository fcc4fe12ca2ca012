#ifndef QLS_ERRORS_HPP
#define QLS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qls {

// Base for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Adaptive stepper could not meet its tolerance within the step budget.
struct IntegrationFailure : Error {
    using Error::Error;
};

// Operator/state dimensions do not agree.
struct DimensionMismatch : Error {
    using Error::Error;
};

// Requested squeezing does not fit in the Fock cutoff (norm deficit too large).
struct TruncationWarning : Error {
    using Error::Error;
};

// Interpolation request outside the tabulated detuning range.
struct OutOfRange : Error {
    using Error::Error;
};

// Profile has no resolvable peak above background.
struct NoPeak : Error {
    using Error::Error;
};

// Cache entry failed its checksum or could not be parsed.
struct CorruptCacheEntry : Error {
    using Error::Error;
};

// Exact statistic distribution would exceed the configured atom budget.
struct AtomOverflow : Error {
    using Error::Error;
};

// Configuration file violates the schema; message names the offending key.
struct SchemaError : Error {
    using Error::Error;
};

// Mutually exclusive command-line options were given together.
struct ConflictError : Error {
    using Error::Error;
};

}  // namespace qls

#endif
