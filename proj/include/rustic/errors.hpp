#pragma once

#include <stdexcept>
#include <string>

namespace rustic {

/// Malformed or inconsistent input data (bad file, shape mismatch, ...).
class data_error : public std::runtime_error {
public:
    explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative numerical procedure failed to converge or produced
/// non-finite values.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace rustic
