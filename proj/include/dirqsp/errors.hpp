#pragma once

#include <stdexcept>
#include <string>

namespace dirqsp {

// Exit-code mapping used by the CLI: input 2, numeric 3, verification 4.

struct InputError : std::invalid_argument {
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A residual gate or iteration cap failed; callers may retry in extended
// precision before giving up.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// A mathematical property the construction guarantees did not hold.
struct VerificationError : std::runtime_error {
    explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dirqsp
