#include "doctest.h"

#include <numeric>
#include <random>

#include "econum/economy.hpp"

using namespace econum;

TEST_CASE("phi on known factorizations") {
    Base b10(10);
    CHECK(phi(Factorization{{{2, 4}}}, b10) == 2);
    CHECK(phi(Factorization{}, b10) == 0);
    // 8314020 = 2^2 3^2 5 11 13 17 19
    Factorization f{{{2, 2}, {3, 2}, {5, 1}, {11, 1}, {13, 1}, {17, 1}, {19, 1}}};
    CHECK(phi(f, b10) == 13);
    CHECK(f.value() == 8314020);
}

TEST_CASE("h on known values") {
    Base b10(10);
    CHECK(h(13, b10) == 0);
    CHECK(h(4374, b10) == 1);
    CHECK(h(8314020, b10) == -6);
    CHECK(h(1, b10) == 1);
    CHECK_THROWS_AS(h(0, b10), std::domain_error);
}

TEST_CASE("classify") {
    Base b10(10);
    auto r16 = classify(16, b10);
    CHECK(r16.h == 0);
    CHECK(r16.cls == EconomyClass::equidigital);
    CHECK(r16.economical());

    auto r7 = classify(40353607, b10);
    CHECK(r7.h == 6);
    CHECK(r7.cls == EconomyClass::frugal);
    CHECK(r7.k_frugal(6));
    CHECK_FALSE(r7.k_frugal(7));

    auto r1 = classify(1, b10);
    CHECK(r1.h == 1);
    CHECK(r1.cls == EconomyClass::frugal);

    // base 2: 16 = 10000, factorization 2^4 = "10 100"
    auto rb2 = classify(16, Base(2));
    CHECK(rb2.delta == 5);
    CHECK(rb2.phi == 5);
    CHECK(rb2.h == 0);
}

TEST_CASE("phi is additive on coprime pairs and subadditive in general") {
    std::mt19937_64 rng(2024);
    Base b10(10);
    int coprime_checked = 0;
    for (int i = 0; i < 3000; ++i) {
        std::uint64_t m = rng() % 1'000'000 + 1;
        std::uint64_t n = rng() % 1'000'000 + 1;
        int pm = phi(factor_u64(m), b10);
        int pn = phi(factor_u64(n), b10);
        int pmn = phi(factor_u64(m * n), b10);
        CHECK(pmn <= pm + pn);
        if (std::gcd(m, n) == 1) {
            CHECK(pmn == pm + pn);
            ++coprime_checked;
        }
    }
    CHECK(coprime_checked > 500);
}

TEST_CASE("phi of powers against the bit-length bound") {
    std::mt19937_64 rng(5);
    Base b10(10);
    for (int i = 0; i < 500; ++i) {
        std::uint64_t n = rng() % 10'000 + 2;
        int b = 2 + int(rng() % 5);
        BigInt np = boost::multiprecision::pow(BigInt(n), unsigned(b));
        if (np > BigInt(std::uint64_t(-1))) continue;
        int pn = phi(factor_u64(n), b10);
        int pnb = phi(factor_u64(np.convert_to<std::uint64_t>()), b10);
        int bitlen = 64 - std::countl_zero(n);
        CHECK(pnb <= pn + delta(std::uint64_t(b), b10) * bitlen);
    }
}

TEST_CASE("h superadditivity and frugal absorption") {
    // delta(mn) >= delta(m)+delta(n)-1 and phi(mn) <= phi(m)+phi(n)
    // combine to h(mn) >= h(m)+h(n)-1; a frugal factor therefore never
    // drops h below h(n), and frugal times economical stays economical
    std::mt19937_64 rng(31337);
    Base b10(10);
    for (int i = 0; i < 3000; ++i) {
        std::uint64_t m = rng() % 1'000'000 + 1;
        std::uint64_t n = rng() % 1'000'000 + 1;
        int hm = h(m, b10), hn = h(n, b10), hmn = h(m * n, b10);
        CHECK(hmn >= hm + hn - 1);
        if (hm > 0) {
            if (hn >= 0) CHECK(hmn >= 0);
            CHECK(hmn >= hn);
        }
    }
}
