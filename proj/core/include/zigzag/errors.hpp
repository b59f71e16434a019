#pragma once

#include <stdexcept>
#include <string>

namespace zigzag {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An enumeration or construction would exceed a configured hard cap
// (sequence length, depth, point count, period, search budget).
struct CapExceeded : Error {
    using Error::Error;
};

// An internally verified object failed its own check, or a certificate
// did not re-verify.
struct VerificationError : Error {
    using Error::Error;
};

// Malformed or out-of-contract input (bad file, invariant violation,
// precondition failure).
struct InputError : Error {
    using Error::Error;
};

}  // namespace zigzag
