#pragma once

#include <stdexcept>
#include <string>

namespace toricdef {

/// Bad user input: non-coprime pair, out-of-range indices, unsatisfied preconditions.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// q = n - 1 or n <= 2: the singularity is a hypersurface and has no interesting deformations here.
class HypersurfaceInput : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// A mathematical invariant failed to hold. Always a bug, never a user error.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline void ensure(bool cond, const std::string& what) {
    if (!cond) throw InvariantViolation(what);
}

}  // namespace toricdef
