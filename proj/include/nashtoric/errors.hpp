#pragma once

#include <stdexcept>
#include <string>

namespace nashtoric {

// Input that is mathematically impossible to honor (as opposed to malformed):
// e.g. asking for a divisorial resolution avoiding an essential divisor.
struct RefusalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace nashtoric
