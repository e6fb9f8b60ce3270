#pragma once

#include <cstdint>
#include <string>

#include "econum/digits.hpp"
#include "econum/factor.hpp"

namespace econum {

enum class EconomyClass { extravagant, equidigital, frugal };

EconomyClass class_of_h(int h);
std::string class_name(EconomyClass c);

/// Classification of one integer: h = delta - phi and the derived label.
struct EconomyReport {
    std::uint64_t n = 0;
    int delta = 0;
    int phi = 0;
    int h = 0;
    EconomyClass cls = EconomyClass::equidigital;
    Factorization factorization;

    bool economical() const { return h >= 0; }
    bool k_frugal(int k) const { return h >= k; }
};

/// Digits needed to write the factorization: sum of delta(p) + delta'(a).
/// Empty factorization (n = 1) costs 0.
int phi(const Factorization& f, Base B);

/// h(n) = delta(n) - phi(n). h(1) = 1.
int h(std::uint64_t n, Base B);

/// h from an already-known factorization (lifts the 2^64 bound elsewhere).
int h_factored(std::uint64_t n, const Factorization& f, Base B);

EconomyReport classify(std::uint64_t n, Base B);

} // namespace econum
