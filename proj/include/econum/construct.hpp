#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "econum/bigint.hpp"
#include "econum/economy.hpp"

namespace econum {

/// Factorization with arbitrary-precision primes, used on the construction
/// side where values exceed 64 bits. Primes increasing, exponents >= 1.
using BigFactorization = std::vector<std::pair<BigInt, unsigned>>;

BigInt big_value(const BigFactorization& f);
int phi_big(const BigFactorization& f, Base B);
int h_big(const BigInt& n, const BigFactorization& f, Base B);
BigFactorization merge_factors(BigFactorization a, const BigFactorization& b);

/// Classification of an arbitrary-precision integer. `exact` is false when
/// a composite cofactor resisted factoring, making the reported h only an
/// upper bound; such a report never counts as verified k-frugal.
struct BigReport {
    BigInt n;
    int delta = 0;
    int phi = 0;
    int h = 0;
    EconomyClass cls = EconomyClass::equidigital;
    BigFactorization factors;
    bool exact = true;

    bool economical() const { return exact && h >= 0; }
    bool k_frugal(int k) const { return exact && h >= k; }
};

enum class PlanVariant { baseline, shifted, power_m0 };

PlanVariant variant_from_name(const std::string& name);
std::string variant_name(PlanVariant v);

/// One covered offset j of a run construction: N + j must be divisible by
/// f_j * m_j, leaving the cofactor C_j = S_j + M_j x to the prime search.
struct PlanEntry {
    int offset = 0;
    BigInt f = 1;
    BigInt m = 1;
    BigFactorization m_factors;    // factorization of f * m
    BigInt modulus = 1;            // f * m
    BigInt S;                      // cofactor residue (N0 + j) / (f m)
    BigInt Mj;                     // cofactor stride M / (f m)
};

struct ConstructionPlan {
    unsigned t = 0;
    int k = 0;
    int base = 10;
    PlanVariant variant = PlanVariant::baseline;
    BigInt f0 = 1;
    std::vector<PlanEntry> entries; // ordered by offset
    BigInt M;                       // combined modulus
    BigInt N0;                      // CRT residue, 0 <= N0 < M
};

/// General CRT merge: x ≡ r mod m over possibly non-coprime moduli.
/// Throws if the congruences are inconsistent.
std::pair<BigInt, BigInt> crt(const std::vector<std::pair<BigInt, BigInt>>& congruences);

/// k-frugal multiple of r coprime to s: n = r * p^a with p the least prime
/// above r*s (overridable) and a >= 2 minimal with h(n) >= k.
std::pair<BigInt, BigFactorization> frugal_sample(std::uint64_t r, std::uint64_t s, int k,
                                                  Base B,
                                                  std::optional<BigInt> forced_p = std::nullopt);

/// Minimal power r^a (a >= 2) with h >= k. Requires delta(r) >= 2,
/// i.e. r >= B, otherwise h(r^a) need not grow.
std::pair<BigInt, BigFactorization> frugal_power(std::uint64_t r, int k, Base B);

struct ExtravagantResult {
    BigInt n;
    int t = 0;
    std::vector<BigInt> primes;
    BigReport report;
};

/// Product of k+1 primes, one from each interval [B^t L^i, B^t L^{i+1}],
/// giving h(n) = -k exactly. Interval endpoints are evaluated in high
/// precision with inward rounding so digit lengths are never off by one.
ExtravagantResult build_extravagant(int k, Base B);

/// Moduli, multipliers and CRT solution for a run of t consecutive k-frugal
/// numbers. Overrides (offset -> factored multiplier) replace the default
/// multiplier rule at those offsets.
ConstructionPlan build_plan(unsigned t, int k, Base B,
                            PlanVariant variant = PlanVariant::baseline,
                            const std::map<int, BigFactorization>& m_overrides = {});

struct DicksonResult {
    BigInt x;
    BigInt N;
};

/// Least x in [x_start, x_limit) making every cofactor S_j + Mj x a probable
/// prime; empty when the bound is exhausted (Dickson's conjecture promises
/// existence but no bound, so failure is reported honestly).
std::optional<DicksonResult> dickson_search(const ConstructionPlan& plan,
                                            std::uint64_t x_start, std::uint64_t x_limit);

/// Per-offset reports for N ≡ N0 mod M: the known modulus factorization
/// combined with a best-effort factorization of the cofactor.
std::vector<BigReport> verify_run(const ConstructionPlan& plan, const BigInt& N);

/// Same, over an explicit contiguous offset range. Offsets without a plan
/// entry (for instance -1, which no small prime divides) are checked as
/// bare values. Covers the case where a planned run turns out longer than
/// requested.
std::vector<BigReport> verify_run(const ConstructionPlan& plan, const BigInt& N,
                                  int lo_offset, int hi_offset);

/// Independent verification of a run by full 64-bit factorization,
/// with no construction knowledge.
std::vector<BigReport> verify_run_u64(std::uint64_t start, unsigned len, Base B);

std::string plan_to_json(const ConstructionPlan& plan);
ConstructionPlan plan_from_json(const std::string& text);

} // namespace econum
