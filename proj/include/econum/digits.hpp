#pragma once

#include <stdexcept>

namespace econum {

/// Radix every digit count is relative to. Valid range 2..64.
struct Base {
    int value;

    explicit Base(int v) : value(v) {
        if (v < 2 || v > 64)
            throw std::invalid_argument("Base: radix must be in [2, 64]");
    }
};

/// Number of base-B digits of n (n >= 1). Pure integer division loop,
/// exact for arbitrary-precision types; never uses floating point.
template <class Int>
int delta(Int n, Base B) {
    if (n < 1)
        throw std::domain_error("delta: n must be >= 1");
    int k = 0;
    while (n > 0) {
        n /= B.value;
        ++k;
    }
    return k;
}

/// Digit count charged for an exponent in a factorization:
/// exponents of 1 are not written, so they cost nothing.
template <class Int>
int delta_prime(const Int& a, Base B) {
    if (a < 1)
        throw std::domain_error("delta_prime: a must be >= 1");
    if (a == 1)
        return 0;
    return delta(a, B);
}

} // namespace econum
