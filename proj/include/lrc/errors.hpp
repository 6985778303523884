#pragma once

#include <stdexcept>
#include <string>

namespace lrc {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Violated precondition or malformed input (BadDims, NonSquare, ZeroForm,
/// OutOfRange, DegenerateCode, ...). CLI exit code 3.
struct InputError : Error {
    using Error::Error;
};

/// A caller-supplied budget was insufficient (BudgetExceeded, Exhausted,
/// ScanFailed). CLI exit code 2.
struct BudgetError : Error {
    using Error::Error;
};

} // namespace lrc
