// errors.hpp
// Error taxonomy shared across the library. The CLI maps these to exit codes.

#pragma once

#include <stdexcept>
#include <string>

namespace qsim {

// Bad arguments, violated preconditions, malformed usage. CLI exit code 2.
class validation_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Request exceeds the fixed desk-scale budgets (register size, lattice
// slots, table width). CLI exit code 3.
class resource_limit_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A register failed an internal consistency check (e.g. norm drift beyond
// the measurement threshold). Signals a bug, not a user mistake.
class state_corruption_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace qsim
