#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "econum/bigint.hpp"

namespace econum {

/// Prime power factorization of a machine-word integer.
/// Primes strictly increasing, exponents >= 1; empty list is n = 1.
struct Factorization {
    std::vector<std::pair<std::uint64_t, unsigned>> factors;

    std::uint64_t value() const;
    bool operator==(const Factorization&) const = default;
};

/// Deterministic primality for the full 64-bit range.
/// Miller-Rabin with the verified base set {2,3,5,7,...,37}.
bool is_prime(std::uint64_t n);

/// Primality for arbitrary-precision n: exact below 2^64, Baillie-PSW
/// (strong base-2 Fermat + strong Lucas) above. No composite is known
/// to pass BPSW but the result is formally probabilistic there.
bool is_probable_prime(const BigInt& n);

/// Complete factorization for 1 <= n < 2^64.
/// Trial division by a small-prime table, then Brent-variant Pollard rho.
Factorization factor_u64(std::uint64_t n);

/// Smallest (probable) prime p with lo < p <= hi, if any.
std::optional<BigInt> next_prime_in(const BigInt& lo, const BigInt& hi);

/// Smallest (probable) prime strictly greater than lo.
BigInt next_prime_above(const BigInt& lo);

/// Jacobi symbol (a/n) for odd n > 0.
int jacobi(BigInt a, BigInt n);

/// Best-effort factorization of an arbitrary-precision integer:
/// trial division, then Pollard rho (bounded iterations) on composite
/// cofactors; cofactors below 2^64 fall through to factor_u64.
/// On success `complete` is true and the factor list multiplies back to n;
/// otherwise the unsplit composite residue is reported with exponent 1.
struct BigFactorResult {
    std::vector<std::pair<BigInt, unsigned>> factors;
    bool complete = true;
};
BigFactorResult factor_big(const BigInt& n, std::uint64_t rho_iter_budget = 8'000'000);

} // namespace econum
