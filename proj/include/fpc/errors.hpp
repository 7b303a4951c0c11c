#pragma once

#include <stdexcept>
#include <string>

namespace fpc {

// Bad user input: measure definitions, grids, config files. CLI maps this to exit 2.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A quantity left log-space representability. CLI maps this to exit 3.
class RangeError : public std::range_error {
public:
    explicit RangeError(const std::string& what) : std::range_error(what) {}
};

// Iterative solver failed to bracket or converge. CLI maps this to exit 3.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fpc
