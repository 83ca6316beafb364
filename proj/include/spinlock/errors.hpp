#pragma once

#include <stdexcept>
#include <string>

namespace spinlock {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad user input: sizes out of range, malformed config, invalid grids.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Caller broke a precondition (dimension mismatch, non-Hermitian generator, ...).
class ContractError : public Error {
public:
    using Error::Error;
};

// Minimal detectable phase evaluated at a node of the Ramsey fringe.
class FringeNodeError : public Error {
public:
    using Error::Error;
};

// Numerical result outside its mathematical domain (negative variance, radicand).
class DomainError : public Error {
public:
    using Error::Error;
};

// No grid point satisfies the measurement-range threshold.
class EmptyRangeError : public Error {
public:
    using Error::Error;
};

}  // namespace spinlock
