#pragma once

#include <stdexcept>
#include <string>

namespace qdecomp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent caller input (bad lengths, overlapping sets, NaN weights, ...).
class InputError : public Error {
public:
    using Error::Error;
};

/// A size cap was exceeded (brute force limit, statevector qubit cap).
class ResourceError : public Error {
public:
    using Error::Error;
};

/// Removing the requested vertices does not disconnect the graph, or no separator exists.
class NoCutError : public Error {
public:
    using Error::Error;
};

class NumericError : public Error {
public:
    using Error::Error;
};

/// Requested operation is not available for this input (p > 1 closed form, lifting without witnesses).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

} // namespace qdecomp
