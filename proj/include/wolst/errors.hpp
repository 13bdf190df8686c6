#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wolst {

// Base class for everything this library throws on contract violations.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotPrimeError : Error {
    explicit NotPrimeError(unsigned long long n)
        : Error("not prime: " + std::to_string(n)) {}
};

struct ExponentOutOfRangeError : Error {
    explicit ExponentOutOfRangeError(int k)
        : Error("exponent k out of range [1,6]: " + std::to_string(k)) {}
};

struct OverflowError : Error {
    using Error::Error;
};

// Batch inversion reports which input was the first non-unit.
struct NotAUnitError : Error {
    std::size_t index;
    explicit NotAUnitError(std::size_t idx = 0)
        : Error("not a unit (index " + std::to_string(idx) + ")"), index(idx) {}
};

struct RangeTooLargeError : Error {
    using Error::Error;
};

// p does not divide a power sum it must divide; signals a bug or an index
// outside the validated Bernoulli extraction domain.
struct DivisibilityViolationError : Error {
    using Error::Error;
};

struct IndexNotSupportedError : Error {
    using Error::Error;
};

struct PrimeTooSmallError : Error {
    explicit PrimeTooSmallError(unsigned long long p, unsigned long long min_p)
        : Error("p = " + std::to_string(p) + " below smallest admissible prime " +
                std::to_string(min_p)) {}
};

} // namespace wolst
