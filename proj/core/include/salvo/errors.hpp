#pragma once

#include <stdexcept>
#include <string>

namespace salvo {

// Bad inputs: malformed scenario files, violated type invariants,
// mismatched dimensions. CLI maps these to exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure at run time: non-finite state, solver breakdown.
// CLI maps these to exit code 2.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace salvo
