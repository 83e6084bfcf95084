#pragma once

#include <stdexcept>

namespace choaelm {

/// Malformed arguments: shape mismatches, out-of-range parameters, bad grammar.
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Unreadable or inconsistent external data (files, manifests, payloads).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Non-finite values or failed numeric checks at runtime.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace choaelm
