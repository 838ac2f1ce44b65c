#pragma once

#include <stdexcept>

namespace kborel {

// Exit-code contract of the CLI: InputError -> 2, HypothesisError -> 3, UnsupportedError -> 4.
// Anything else escaping to main is a bug and aborts loudly.

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HypothesisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace kborel
