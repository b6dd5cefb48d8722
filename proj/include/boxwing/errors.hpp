#pragma once

#include <stdexcept>
#include <string>

namespace boxwing {

// Bad user input: malformed files, unknown ids, dimension mismatches,
// out-of-domain arguments. CLI maps this to exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure: rank-deficient fits, non-convergence, infeasible
// problems. CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace boxwing
