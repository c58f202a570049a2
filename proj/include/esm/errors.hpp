#pragma once

#include <stdexcept>
#include <string>

namespace esm {

// Bad user input: config files, shape names, mismatched dataset headers.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical procedure failed to meet its tolerance (MFS residual,
// eigensolver non-convergence, singular mode system).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// The computation succeeded but produced no usable information
// (e.g. every sampling node is invalid).
class DegenerateError : public std::runtime_error {
public:
    explicit DegenerateError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace esm
