#include "econum/economy.hpp"

namespace econum {

EconomyClass class_of_h(int h) {
    if (h < 0) return EconomyClass::extravagant;
    if (h == 0) return EconomyClass::equidigital;
    return EconomyClass::frugal;
}

std::string class_name(EconomyClass c) {
    switch (c) {
        case EconomyClass::extravagant: return "extravagant";
        case EconomyClass::equidigital: return "equidigital";
        case EconomyClass::frugal: return "frugal";
    }
    return "?";
}

int phi(const Factorization& f, Base B) {
    int total = 0;
    for (auto& [p, a] : f.factors)
        total += delta(p, B) + delta_prime(std::uint64_t(a), B);
    return total;
}

int h_factored(std::uint64_t n, const Factorization& f, Base B) {
    return delta(n, B) - phi(f, B);
}

int h(std::uint64_t n, Base B) {
    if (n == 0) throw std::domain_error("h: n must be >= 1");
    return h_factored(n, factor_u64(n), B);
}

EconomyReport classify(std::uint64_t n, Base B) {
    if (n == 0) throw std::domain_error("classify: n must be >= 1");
    EconomyReport r;
    r.n = n;
    r.factorization = factor_u64(n);
    r.delta = delta(n, B);
    r.phi = phi(r.factorization, B);
    r.h = r.delta - r.phi;
    r.cls = class_of_h(r.h);
    return r;
}

} // namespace econum
