#ifndef ECSDBN_ERRORS_HPP
#define ECSDBN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ecsdbn {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Incompatible matrix/vector dimensions.
struct ShapeError : Error {
    using Error::Error;
};

// Invalid argument or configuration value.
struct ParamError : Error {
    using Error::Error;
};

// Malformed or inconsistent input data (labels, class coverage).
struct DataError : Error {
    using Error::Error;
};

// Syntactically invalid dataset file.
struct FormatError : Error {
    using Error::Error;
};

// Operation applied to an object in the wrong state.
struct StateError : Error {
    using Error::Error;
};

// Input on which the requested quantity is mathematically undefined.
struct DegenerateInputError : Error {
    using Error::Error;
};

} // namespace ecsdbn

#endif
