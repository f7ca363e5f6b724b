#pragma once

#include <stdexcept>
#include <string>

namespace rlkit {

// Malformed input: bad tables, bad JSON, unparsable text.
struct format_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An operation would exceed a configured size cap.
struct size_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A documented precondition of an operation does not hold.
struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A cross-check between two routes that must agree has failed.
// Signals a bug in the toolkit, never a user error.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace rlkit
