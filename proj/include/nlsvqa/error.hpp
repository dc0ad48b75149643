#pragma once

#include <stdexcept>
#include <string>

namespace nlsvqa {

/// Invalid run or simulator configuration (qubit counts, widths, config files).
class ConfigurationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An API was called with arguments that violate its preconditions.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A mathematical routine was asked for a value outside its domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Bad numerical input, e.g. a non-finite objective value at the start point.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace nlsvqa
