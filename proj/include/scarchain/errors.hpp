#pragma once

#include <stdexcept>
#include <string>

namespace scarchain {

// Parameter errors are reported as std::invalid_argument.

/// A request exceeds the configured memory/size budget.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical routine failed to converge or produced invalid results.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// A valid request hit a feature that is deliberately not implemented.
class UnsupportedFeatureError : public std::runtime_error {
public:
    explicit UnsupportedFeatureError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace scarchain
