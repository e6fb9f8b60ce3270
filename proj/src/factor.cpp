#include "econum/factor.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace econum {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
    u64 r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Strong pseudoprime test to one base; n odd, n > 2.
bool miller_rabin(u64 n, u64 a) {
    a %= n;
    if (a == 0) return true;
    u64 d = n - 1;
    int s = std::countr_zero(d);
    d >>= s;
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

constexpr std::array<u64, 12> kMrBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

constexpr std::array<u64, 25> kSmallPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23,
                                              29, 31, 37, 41, 43, 47, 53, 59, 61,
                                              67, 71, 73, 79, 83, 89, 97};

// Pollard rho, Brent cycle detection with batched gcd.
// Deterministic: the polynomial increment is derived from n and the retry count.
u64 pollard_brent(u64 n, u64 c) {
    if (n % 2 == 0) return 2;
    u64 y = c % n + 1, r = 1, q = 1, g = 1, x = 0, ys = 0;
    const u64 m = 128;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    while (g == 1) {
        x = y;
        for (u64 i = 0; i < r; ++i) y = f(y);
        for (u64 k = 0; k < r && g == 1; k += m) {
            ys = y;
            for (u64 i = 0; i < std::min(m, r - k); ++i) {
                y = f(y);
                q = mulmod(q, x > y ? x - y : y - x, n);
            }
            g = std::gcd(q, n);
        }
        r <<= 1;
    }
    if (g == n) {
        do {
            ys = f(ys);
            g = std::gcd(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g;
}

void factor_rec(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    u64 d = n;
    for (u64 c = 1 + n % 97; d == n; ++c) d = pollard_brent(n, c);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

// ---- arbitrary precision ----

bool mr_base2(const BigInt& n) {
    BigInt d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    BigInt x = boost::multiprecision::powm(BigInt(2), d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == n - 1) return true;
    }
    return false;
}

// Strong Lucas probable prime test with Selfridge's parameter choice.
bool strong_lucas(const BigInt& n) {
    // Find D in 5, -7, 9, -11, ... with (D/n) = -1.
    BigInt D = 5;
    int sign = 1;
    while (true) {
        int j = jacobi(sign > 0 ? D : -D, n);
        if (j == 0) return false; // proper factor found
        if (j == -1) break;
        D += 2;
        sign = -sign;
        if (D > 10'000) return false; // unreachable for non-squares
    }
    BigInt Dv = sign > 0 ? D : -D;
    const BigInt P = 1;
    BigInt Q = (1 - Dv) / 4;

    BigInt d = n + 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }

    auto mod = [&](BigInt v) {
        v %= n;
        if (v < 0) v += n;
        return v;
    };

    // Compute U_d, V_d, Q^d by binary ladder over the bits of d.
    BigInt U = 1, V = P, Qk = mod(Q);
    unsigned bits = 0;
    for (BigInt t = d; t > 0; t >>= 1) ++bits;
    for (int i = int(bits) - 2; i >= 0; --i) {
        // double: (U, V) -> (U*V, V^2 - 2 Q^k)
        U = mod(U * V);
        V = mod(V * V - 2 * Qk);
        Qk = mod(Qk * Qk);
        if (boost::multiprecision::bit_test(d, unsigned(i))) {
            // increment: standard P=1 step, halving mod n
            BigInt U2 = U + V;
            BigInt V2 = Dv * U + V;
            if ((U2 & 1) != 0) U2 += n;
            if ((V2 & 1) != 0) V2 += n;
            U = mod(U2 >> 1);
            V = mod(V2 >> 1);
            Qk = mod(Qk * Q);
        }
    }
    if (U == 0 || V == 0) return true;
    for (unsigned r = 1; r < s; ++r) {
        V = mod(V * V - 2 * Qk);
        if (V == 0) return true;
        Qk = mod(Qk * Qk);
    }
    return false;
}

bool is_perfect_square(const BigInt& n) {
    if (n < 0) return false;
    BigInt r = boost::multiprecision::sqrt(n);
    return r * r == n;
}

BigInt rho_big(const BigInt& n, u64 iter_budget) {
    // Brent variant on cpp_int; returns a nontrivial factor or 0 on failure.
    for (u64 c = 1; c <= 8; ++c) {
        BigInt y = 2 + c, x = 0, ys = 0, q = 1, g = 1;
        u64 r = 1, used = 0;
        const u64 m = 128;
        auto f = [&](const BigInt& v) { return (v * v + c) % n; };
        while (g == 1 && used < iter_budget) {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            for (u64 k = 0; k < r && g == 1; k += m) {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = q * abs(x - y) % n;
                }
                g = boost::multiprecision::gcd(q, n);
            }
            used += r;
            r <<= 1;
        }
        if (g == n) {
            do {
                ys = f(ys);
                g = boost::multiprecision::gcd(abs(x - ys), n);
            } while (g == 1);
        }
        if (g > 1 && g < n) return g;
    }
    return 0;
}

void factor_big_rec(const BigInt& n, u64 budget,
                    std::vector<BigInt>& primes, std::vector<BigInt>& stuck) {
    if (n == 1) return;
    if (n < BigInt(std::numeric_limits<u64>::max())) {
        auto f = factor_u64(n.convert_to<u64>());
        for (auto& [p, e] : f.factors)
            for (unsigned i = 0; i < e; ++i) primes.emplace_back(p);
        return;
    }
    if (is_probable_prime(n)) {
        primes.push_back(n);
        return;
    }
    BigInt d = rho_big(n, budget);
    if (d == 0) {
        stuck.push_back(n);
        return;
    }
    factor_big_rec(d, budget, primes, stuck);
    factor_big_rec(n / d, budget, primes, stuck);
}

} // namespace

std::uint64_t Factorization::value() const {
    u64 n = 1;
    for (auto& [p, e] : factors)
        for (unsigned i = 0; i < e; ++i) n *= p;
    return n;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (u64 p : kSmallPrimes) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    for (u64 a : kMrBases)
        if (!miller_rabin(n, a)) return false;
    return true;
}

bool is_probable_prime(const BigInt& n) {
    if (n < BigInt(std::numeric_limits<u64>::max()))
        return n >= 2 && is_prime(n.convert_to<u64>());
    for (u64 p : kSmallPrimes)
        if (n % p == 0) return false;
    if (!mr_base2(n)) return false;
    if (is_perfect_square(n)) return false;
    return strong_lucas(n);
}

Factorization factor_u64(std::uint64_t n) {
    if (n == 0) throw std::domain_error("factor_u64: n must be >= 1");
    Factorization f;
    std::vector<u64> primes;
    for (u64 p : kSmallPrimes) {
        while (n % p == 0) {
            primes.push_back(p);
            n /= p;
        }
    }
    if (n > 1) factor_rec(n, primes);
    std::sort(primes.begin(), primes.end());
    for (u64 p : primes) {
        if (!f.factors.empty() && f.factors.back().first == p)
            ++f.factors.back().second;
        else
            f.factors.emplace_back(p, 1);
    }
    return f;
}

std::optional<BigInt> next_prime_in(const BigInt& lo, const BigInt& hi) {
    if (lo >= hi) throw std::invalid_argument("next_prime_in: need lo < hi");
    BigInt p = lo + 1;
    if (p <= 2) {
        if (hi >= 2) return BigInt(2);
        return std::nullopt;
    }
    if ((p & 1) == 0) ++p;
    for (; p <= hi; p += 2)
        if (is_probable_prime(p)) return p;
    return std::nullopt;
}

BigInt next_prime_above(const BigInt& lo) {
    BigInt p = lo + 1;
    if (p <= 2) return 2;
    if ((p & 1) == 0) ++p;
    while (!is_probable_prime(p)) p += 2;
    return p;
}

int jacobi(BigInt a, BigInt n) {
    if (n <= 0 || (n & 1) == 0)
        throw std::invalid_argument("jacobi: n must be positive and odd");
    a %= n;
    if (a < 0) a += n;
    int result = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            u64 r = (n % 8).convert_to<u64>();
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if ((a % 4) == 3 && (n % 4) == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

BigFactorResult factor_big(const BigInt& n, std::uint64_t rho_iter_budget) {
    if (n < 1) throw std::domain_error("factor_big: n must be >= 1");
    BigFactorResult res;
    if (n == 1) return res;
    BigInt rest = n;
    std::vector<BigInt> primes, stuck;
    // Trial division keeps rho off the easy part.
    for (u64 p = 2; p < 100'000 && BigInt(p) * p <= rest; p += (p == 2 ? 1 : 2)) {
        while (rest % p == 0) {
            primes.emplace_back(p);
            rest /= p;
        }
    }
    factor_big_rec(rest, rho_iter_budget, primes, stuck);
    std::sort(primes.begin(), primes.end());
    for (auto& p : primes) {
        if (!res.factors.empty() && res.factors.back().first == p)
            ++res.factors.back().second;
        else
            res.factors.emplace_back(p, 1);
    }
    for (auto& c : stuck) {
        res.factors.emplace_back(c, 1);
        res.complete = false;
    }
    return res;
}

} // namespace econum
