#ifndef QDP_ERRORS_HPP
#define QDP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qdp {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotHermitianError : Error {
    using Error::Error;
};

struct NumericalFailure : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

struct DimensionMismatchError : Error {
    using Error::Error;
};

struct DimensionOverflowError : Error {
    using Error::Error;
};

struct ParameterOutOfRangeError : Error {
    using Error::Error;
};

struct GridMismatchError : Error {
    using Error::Error;
};

struct InfiniteMomentError : Error {
    using Error::Error;
};

struct InvalidDeltaError : Error {
    using Error::Error;
};

struct FitError : Error {
    using Error::Error;
};

// Raised while loading files; message names the offending field.
struct ParseError : Error {
    using Error::Error;
};

} // namespace qdp

#endif
