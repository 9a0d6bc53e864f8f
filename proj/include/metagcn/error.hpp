#pragma once

#include <stdexcept>
#include <string>

namespace metagcn {

// Error taxonomy. The CLI maps these onto exit codes:
// ParamError -> 1, DataError -> 2, NumericError (and contract/shape bugs) -> 3.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mismatched matrix dimensions.
struct ShapeError : Error {
    using Error::Error;
};

// Invalid argument or configuration value.
struct ParamError : Error {
    using Error::Error;
};

// A documented precondition was violated by the caller.
struct ContractError : Error {
    using Error::Error;
};

// Non-finite values or other numerical breakdown.
struct NumericError : Error {
    using Error::Error;
};

// Unreadable or malformed input data.
struct DataError : Error {
    using Error::Error;
};

}  // namespace metagcn
