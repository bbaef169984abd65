#pragma once

#include <stdexcept>
#include <string>

namespace dpsi {

// Argument outside the mathematical domain of an operation (log of a
// non-positive interval, R(n) for n < 3, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Index or argument outside what a prime table covers.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// Request exceeds the configured memory budget.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input beyond what the current configuration can handle, e.g. a number
// too large to factor with the sieved primes.
class CapabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or incompatible on-disk data.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace dpsi
