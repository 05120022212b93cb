#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace fantomlab {

using BigInt = mpz_class;
using BigRat = mpq_class;

// Resource caps for anything that materializes per-integer state.
// The default length cap admits the primorials up to 2*3*5*7*11*13*17*19;
// larger indices are still served by the arithmetic-only operations.
struct Guard {
    std::uint64_t max_length = 9'699'690;
    std::uint64_t max_sieve = 1'000'000'000;
};

// A construction would exceed the guard. Carries the size that would have
// been required so callers can report it before refusing.
class guard_error : public std::runtime_error {
public:
    guard_error(const std::string& what, BigInt required)
        : std::runtime_error(what), required_(std::move(required)) {}
    const BigInt& required() const { return required_; }

private:
    BigInt required_;
};

// Capacity or IO failures that are not guard violations.
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// "num/den" in lowest terms, denominator always printed.
std::string rational_string(const BigRat& value);

// Decimal rendering with the given number of significant digits, rounding
// half away from zero. Plain notation while the exponent is small, otherwise
// scientific. Rendering only: decisions always compare exact values.
std::string decimal_string(const BigRat& value, int digits = 6);

}  // namespace fantomlab
