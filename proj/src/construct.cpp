#include "econum/construct.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <nlohmann/json.hpp>

namespace econum {

namespace {

using u64 = std::uint64_t;
using json = nlohmann::json;
using Float = boost::multiprecision::cpp_bin_float_100;

BigFactorization from_u64_factors(const Factorization& f) {
    BigFactorization out;
    for (auto& [p, e] : f.factors) out.emplace_back(BigInt(p), e);
    return out;
}

const std::vector<u64>& filter_primes() {
    static const std::vector<u64> primes = [] {
        std::vector<u64> out;
        for (u64 p = 2; p < 1000; ++p)
            if (is_prime(p)) out.push_back(p);
        return out;
    }();
    return primes;
}

// Probable-prime check with a small-prime pre-filter; the search path
// calls this millions of times.
bool filtered_prime(const BigInt& n) {
    if (n < 2) return false;
    for (u64 p : filter_primes()) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    return is_probable_prime(n);
}

// Extended gcd on BigInt: g = a*x + b*y.
BigInt ext_gcd(const BigInt& a, const BigInt& b, BigInt& x, BigInt& y) {
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    BigInt x1, y1;
    BigInt g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

std::vector<u64> primes_below(unsigned t) {
    std::vector<u64> out;
    for (u64 p = 2; p < t; ++p)
        if (is_prime(p)) out.push_back(p);
    return out;
}

// Directed rounding of a high-precision value to the integer endpoints of
// a real interval: returns false if the working precision cannot decide.
bool inward_floor(const Float& v, BigInt& out) {
    Float f = boost::multiprecision::floor(v);
    if (f == v) {
        out = f.convert_to<BigInt>();
        return true;
    }
    const Float eps = Float("1e-75");
    BigInt lo = Float(boost::multiprecision::floor(v * (1 - eps))).convert_to<BigInt>();
    BigInt hi = Float(boost::multiprecision::floor(v * (1 + eps))).convert_to<BigInt>();
    if (lo != hi) return false;
    out = lo;
    return true;
}

bool inward_ceil(const Float& v, BigInt& out) {
    Float f = boost::multiprecision::floor(v);
    if (f == v) {
        out = f.convert_to<BigInt>();
        return true;
    }
    const Float eps = Float("1e-75");
    BigInt lo = Float(boost::multiprecision::ceil(v * (1 - eps))).convert_to<BigInt>();
    BigInt hi = Float(boost::multiprecision::ceil(v * (1 + eps))).convert_to<BigInt>();
    if (lo != hi) return false;
    out = lo;
    return true;
}

BigReport make_report(const BigInt& n, BigFactorization factors, Base B, bool exact) {
    BigReport r;
    r.n = n;
    r.factors = std::move(factors);
    r.delta = delta(n, B);
    r.phi = phi_big(r.factors, B);
    r.h = r.delta - r.phi;
    r.cls = class_of_h(r.h);
    r.exact = exact;
    return r;
}

} // namespace

BigInt big_value(const BigFactorization& f) {
    BigInt n = 1;
    for (auto& [p, e] : f)
        n *= boost::multiprecision::pow(p, e);
    return n;
}

int phi_big(const BigFactorization& f, Base B) {
    int total = 0;
    for (auto& [p, a] : f) total += delta(p, B) + delta_prime(BigInt(a), B);
    return total;
}

int h_big(const BigInt& n, const BigFactorization& f, Base B) {
    return delta(n, B) - phi_big(f, B);
}

BigFactorization merge_factors(BigFactorization a, const BigFactorization& b) {
    for (auto& [p, e] : b) {
        auto it = std::find_if(a.begin(), a.end(), [&](auto& pe) { return pe.first == p; });
        if (it != a.end())
            it->second += e;
        else
            a.emplace_back(p, e);
    }
    std::sort(a.begin(), a.end());
    return a;
}

PlanVariant variant_from_name(const std::string& name) {
    if (name == "baseline") return PlanVariant::baseline;
    if (name == "shifted") return PlanVariant::shifted;
    if (name == "power-m0" || name == "power_m0") return PlanVariant::power_m0;
    throw std::invalid_argument("unknown plan variant: " + name);
}

std::string variant_name(PlanVariant v) {
    switch (v) {
        case PlanVariant::baseline: return "baseline";
        case PlanVariant::shifted: return "shifted";
        case PlanVariant::power_m0: return "power_m0";
    }
    return "?";
}

std::pair<BigInt, BigInt> crt(const std::vector<std::pair<BigInt, BigInt>>& congruences) {
    BigInt r0 = 0, m0 = 1;
    for (auto& [r, m] : congruences) {
        if (m < 1) throw std::invalid_argument("crt: modulus must be positive");
        BigInt x, y;
        BigInt g = ext_gcd(m0, m, x, y);
        if ((r - r0) % g != 0)
            throw std::invalid_argument("crt: inconsistent congruences");
        BigInt lcm = m0 / g * m;
        BigInt t = (r - r0) / g % (m / g) * x % (m / g);
        r0 = (r0 + m0 * t) % lcm;
        if (r0 < 0) r0 += lcm;
        m0 = lcm;
    }
    return {r0, m0};
}

std::pair<BigInt, BigFactorization> frugal_sample(std::uint64_t r, std::uint64_t s, int k,
                                                  Base B, std::optional<BigInt> forced_p) {
    if (r < 1 || s < 1) throw std::domain_error("frugal_sample: r, s must be >= 1");
    if (std::gcd(r, s) != 1)
        throw std::invalid_argument("frugal_sample: r and s must be coprime");
    BigInt p = forced_p ? *forced_p : next_prime_above(BigInt(r) * s);
    if (r > 1 && BigInt(r) % p == 0)
        throw std::invalid_argument("frugal_sample: p divides r");
    BigFactorization rf = from_u64_factors(factor_u64(r));
    for (unsigned a = 2;; ++a) {
        BigFactorization f = merge_factors(rf, {{p, a}});
        BigInt n = BigInt(r) * boost::multiprecision::pow(p, a);
        if (h_big(n, f, B) >= k) return {n, f};
    }
}

std::pair<BigInt, BigFactorization> frugal_power(std::uint64_t r, int k, Base B) {
    if (r < 2) throw std::domain_error("frugal_power: r must be >= 2");
    if (delta(r, B) < 2)
        throw std::domain_error("frugal_power: need delta(r) >= 2, i.e. r >= B");
    BigFactorization rf = from_u64_factors(factor_u64(r));
    for (unsigned a = 2;; ++a) {
        BigFactorization f = rf;
        for (auto& [p, e] : f) e *= a;
        BigInt n = boost::multiprecision::pow(BigInt(r), a);
        if (h_big(n, f, B) >= k) return {n, f};
    }
}

ExtravagantResult build_extravagant(int k, Base B) {
    if (k < 1) throw std::domain_error("build_extravagant: k must be >= 1");
    const Float theta = Float("0.535");
    const Float bound = boost::multiprecision::pow(Float(2), theta) * (k + 2) * (k + 2);
    int t = 1;
    while (boost::multiprecision::pow(Float(B.value), t * (1 - theta)) <= bound) ++t;

    for (int attempt = 0; attempt < 8; ++attempt, ++t) {
        const Float L =
            1 + boost::multiprecision::pow(Float(2), theta) /
                    boost::multiprecision::pow(Float(B.value), t * (1 - theta));
        const BigInt Bt = boost::multiprecision::pow(BigInt(B.value), unsigned(t));
        std::vector<BigInt> primes;
        bool ok = true;
        Float left = Float(Bt);
        for (int i = 0; i <= k && ok; ++i) {
            Float right = left * L;
            BigInt lo, hi;
            if (!inward_ceil(left, lo) || !inward_floor(right, hi)) {
                ok = false;
                break;
            }
            auto p = next_prime_in(lo - 1, hi);
            if (!p || delta(*p, B) != t + 1) {
                ok = false;
                break;
            }
            primes.push_back(*p);
            left = right;
        }
        if (!ok) continue;
        BigInt n = 1;
        BigFactorization f;
        for (auto& p : primes) {
            n *= p;
            f.emplace_back(p, 1);
        }
        BigReport rep = make_report(n, f, B, true);
        if (rep.h != -k) continue;
        return {n, t, primes, rep};
    }
    throw std::runtime_error("build_extravagant: no admissible prime tuple found");
}

ConstructionPlan build_plan(unsigned t, int k, Base B, PlanVariant variant,
                            const std::map<int, BigFactorization>& m_overrides) {
    if (t < 2) throw std::domain_error("build_plan: t must be >= 2");
    if (k < 0) throw std::domain_error("build_plan: k must be >= 0");
    ConstructionPlan plan;
    plan.t = t;
    plan.k = k;
    plan.base = B.value;
    plan.variant = variant;

    const std::vector<u64> ps = primes_below(t);
    BigFactorization f0_factors;
    for (u64 p : ps) {
        // exponent of the largest power of p below t, plus one
        unsigned ai = 1;
        u64 q = p;
        while (q * p < t) {
            q *= p;
            ++ai;
        }
        f0_factors.emplace_back(BigInt(p), ai + 1);
    }
    plan.f0 = big_value(f0_factors);

    std::vector<int> offsets;
    if (variant == PlanVariant::shifted)
        for (int j = -1; j < int(t) - 1; ++j) offsets.push_back(j);
    else
        for (int j = 0; j < int(t); ++j) offsets.push_back(j);

    const bool t_prime = is_prime(t);
    bool t_pinned = !t_prime;
    u64 q_floor = std::max<u64>({u64(t), u64(B.value), ps.empty() ? 0 : ps.back()});
    u64 last_q = q_floor;

    auto next_q = [&]() -> u64 {
        if (!t_pinned) {
            // the prime t divides one of any t consecutive integers; pin its
            // position here or every x has a composite cofactor
            t_pinned = true;
            return t;
        }
        last_q = next_prime_above(BigInt(last_q)).convert_to<u64>();
        return last_q;
    };
    auto minimal_power = [&](const BigFactorization& base_f, const BigInt& base_v, u64 q) {
        for (unsigned a = 2;; ++a) {
            BigFactorization f = merge_factors(base_f, {{BigInt(q), a}});
            BigInt n = base_v * boost::multiprecision::pow(BigInt(q), a);
            if (h_big(n, f, B) >= k + 1) return std::pair<BigFactorization, BigInt>{
                {{BigInt(q), a}}, boost::multiprecision::pow(BigInt(q), a)};
        }
    };

    for (int j : offsets) {
        PlanEntry e;
        e.offset = j;
        BigFactorization fj_factors;
        if (j == 0) {
            e.f = plan.f0;
            fj_factors = f0_factors;
        } else if (j == -1) {
            e.f = 1;
        } else {
            // f_j collects the p_i-powers exactly dividing j; equal to j here
            // since every prime factor of j < t is itself below t
            BigInt fj = 1;
            for (u64 p : ps) {
                unsigned ex = 0;
                int jj = j;
                while (jj % int(p) == 0) {
                    jj /= int(p);
                    ++ex;
                }
                if (ex) {
                    fj *= boost::multiprecision::pow(BigInt(p), ex);
                    fj_factors.emplace_back(BigInt(p), ex);
                }
            }
            e.f = fj;
        }

        auto ov = m_overrides.find(j);
        if (ov != m_overrides.end()) {
            e.m = big_value(ov->second);
            e.m_factors = merge_factors(fj_factors, ov->second);
        } else if (j == 0 && variant == PlanVariant::power_m0) {
            unsigned a = 1;
            while (true) {
                BigFactorization f = f0_factors;
                for (auto& [p, ex] : f) ex *= (a + 1);
                if (h_big(boost::multiprecision::pow(plan.f0, a + 1), f, B) >= k + 1) {
                    e.m = boost::multiprecision::pow(plan.f0, a);
                    e.m_factors = f;
                    break;
                }
                ++a;
            }
        } else if (j == 0) {
            auto [mf, mv] = minimal_power(f0_factors, plan.f0, next_q());
            e.m = mv;
            e.m_factors = merge_factors(f0_factors, mf);
        } else if (e.f == 1 && k == 0) {
            e.m = 1;
            e.m_factors = {};
        } else if (e.f > 1 && h_big(e.f, fj_factors, B) >= k + 1) {
            e.m = 1;
            e.m_factors = fj_factors;
        } else {
            auto [mf, mv] = minimal_power(fj_factors, e.f, next_q());
            e.m = mv;
            e.m_factors = merge_factors(fj_factors, mf);
        }
        e.modulus = e.f * e.m;
        if (e.modulus > 1 && h_big(e.modulus, e.m_factors, B) < k + 1)
            throw std::invalid_argument("build_plan: multiplier for offset " +
                                        std::to_string(j) + " is not (k+1)-frugal");
        plan.entries.push_back(std::move(e));
    }

    std::vector<std::pair<BigInt, BigInt>> congruences;
    for (auto& e : plan.entries) {
        if (e.modulus == 1) continue;
        BigInt r = (-BigInt(e.offset)) % e.modulus;
        if (r < 0) r += e.modulus;
        congruences.emplace_back(r, e.modulus);
    }
    auto [N0, M] = crt(congruences);
    plan.N0 = N0;
    plan.M = M;
    for (auto& e : plan.entries) {
        BigInt v = plan.N0 + e.offset;
        if (v % e.modulus != 0)
            throw std::logic_error("build_plan: CRT solution violates a congruence");
        e.S = v / e.modulus;
        e.Mj = plan.M / e.modulus;
    }
    return plan;
}

std::optional<DicksonResult> dickson_search(const ConstructionPlan& plan,
                                            std::uint64_t x_start, std::uint64_t x_limit) {
    for (u64 x = x_start; x < x_limit; ++x) {
        bool ok = true;
        for (auto& e : plan.entries) {
            BigInt c = e.S + e.Mj * x;
            if (!filtered_prime(c)) {
                ok = false;
                break;
            }
        }
        if (ok) return DicksonResult{BigInt(x), plan.N0 + plan.M * x};
    }
    return std::nullopt;
}

std::vector<BigReport> verify_run(const ConstructionPlan& plan, const BigInt& N,
                                  int lo_offset, int hi_offset) {
    if (N < 2 || (N - plan.N0) % plan.M != 0)
        throw std::domain_error("verify_run: N must be congruent to N0 mod M");
    if (lo_offset > hi_offset)
        throw std::invalid_argument("verify_run: empty offset range");
    Base B(plan.base);
    std::vector<BigReport> out;
    for (int j = lo_offset; j <= hi_offset; ++j) {
        auto it = std::find_if(plan.entries.begin(), plan.entries.end(),
                               [&](auto& e) { return e.offset == j; });
        BigInt modulus = it != plan.entries.end() ? it->modulus : BigInt(1);
        BigFactorization factors = it != plan.entries.end() ? it->m_factors
                                                            : BigFactorization{};
        BigInt value = N + j;
        BigInt cofactor = value / modulus;
        bool exact = true;
        if (cofactor > 1) {
            auto fb = factor_big(cofactor);
            exact = fb.complete;
            factors = merge_factors(std::move(factors), fb.factors);
        }
        out.push_back(make_report(value, std::move(factors), B, exact));
    }
    return out;
}

std::vector<BigReport> verify_run(const ConstructionPlan& plan, const BigInt& N) {
    int lo = plan.entries.front().offset;
    int hi = plan.entries.back().offset;
    return verify_run(plan, N, lo, hi);
}

std::vector<BigReport> verify_run_u64(std::uint64_t start, unsigned len, Base B) {
    if (start < 1 || len < 1)
        throw std::domain_error("verify_run_u64: need start >= 1 and len >= 1");
    std::vector<BigReport> out;
    for (unsigned i = 0; i < len; ++i) {
        u64 n = start + i;
        EconomyReport r = classify(n, B);
        BigReport b;
        b.n = n;
        b.delta = r.delta;
        b.phi = r.phi;
        b.h = r.h;
        b.cls = r.cls;
        b.factors = from_u64_factors(r.factorization);
        b.exact = true;
        out.push_back(std::move(b));
    }
    return out;
}

namespace {

json factors_to_json(const BigFactorization& f) {
    json arr = json::array();
    for (auto& [p, e] : f) arr.push_back({p.str(), e});
    return arr;
}

BigFactorization factors_from_json(const json& arr) {
    BigFactorization f;
    for (auto& pe : arr) f.emplace_back(BigInt(pe[0].get<std::string>()), pe[1].get<unsigned>());
    return f;
}

} // namespace

std::string plan_to_json(const ConstructionPlan& plan) {
    json j;
    j["t"] = plan.t;
    j["k"] = plan.k;
    j["base"] = plan.base;
    j["variant"] = variant_name(plan.variant);
    j["f0"] = plan.f0.str();
    j["M"] = plan.M.str();
    j["N0"] = plan.N0.str();
    json entries = json::array();
    for (auto& e : plan.entries) {
        entries.push_back({{"offset", e.offset},
                           {"f", e.f.str()},
                           {"m", e.m.str()},
                           {"m_factors", factors_to_json(e.m_factors)},
                           {"modulus", e.modulus.str()},
                           {"S", e.S.str()},
                           {"Mj", e.Mj.str()}});
    }
    j["entries"] = std::move(entries);
    return j.dump();
}

ConstructionPlan plan_from_json(const std::string& text) {
    json j = json::parse(text);
    ConstructionPlan plan;
    plan.t = j.at("t").get<unsigned>();
    plan.k = j.at("k").get<int>();
    plan.base = j.at("base").get<int>();
    plan.variant = variant_from_name(j.at("variant").get<std::string>());
    plan.f0 = BigInt(j.at("f0").get<std::string>());
    plan.M = BigInt(j.at("M").get<std::string>());
    plan.N0 = BigInt(j.at("N0").get<std::string>());
    for (auto& je : j.at("entries")) {
        PlanEntry e;
        e.offset = je.at("offset").get<int>();
        e.f = BigInt(je.at("f").get<std::string>());
        e.m = BigInt(je.at("m").get<std::string>());
        e.m_factors = factors_from_json(je.at("m_factors"));
        e.modulus = BigInt(je.at("modulus").get<std::string>());
        e.S = BigInt(je.at("S").get<std::string>());
        e.Mj = BigInt(je.at("Mj").get<std::string>());
        plan.entries.push_back(std::move(e));
    }
    return plan;
}

} // namespace econum
