#pragma once

#include <stdexcept>
#include <string>

namespace dhlab {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on the caller's data was violated (bad input, critical
/// level passed where a regular one is required, malformed file, ...).
class InputError : public Error {
public:
    using Error::Error;
};

/// An internal consistency check failed. Indicates either a bug or data that
/// cannot come from a compact Hamiltonian S^1-manifold.
class InvariantError : public Error {
public:
    using Error::Error;
};

} // namespace dhlab
