#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "econum/construct.hpp"
#include "econum/scan.hpp"

using namespace econum;
using json = nlohmann::json;

namespace {

json factors_json(const Factorization& f) {
    json arr = json::array();
    for (auto& [p, e] : f.factors) arr.push_back({std::to_string(p), e});
    return arr;
}

json factors_json(const BigFactorization& f) {
    json arr = json::array();
    for (auto& [p, e] : f) arr.push_back({p.str(), e});
    return arr;
}

json report_json(const EconomyReport& r) {
    return {{"n", std::to_string(r.n)},   {"delta", r.delta},
            {"phi", r.phi},               {"h", r.h},
            {"class", class_name(r.cls)}, {"factors", factors_json(r.factorization)}};
}

json report_json(const BigReport& r) {
    return {{"n", r.n.str()},             {"delta", r.delta},
            {"phi", r.phi},               {"h", r.h},
            {"class", class_name(r.cls)}, {"factors", factors_json(r.factors)},
            {"exact", r.exact}};
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

// "p^e*p^e*..." with plain "p" meaning exponent 1
BigFactorization parse_factors(const std::string& text) {
    BigFactorization out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t star = text.find('*', pos);
        std::string part = text.substr(pos, star == std::string::npos ? star : star - pos);
        pos = star == std::string::npos ? text.size() : star + 1;
        std::size_t caret = part.find('^');
        BigInt p(part.substr(0, caret));
        unsigned e = caret == std::string::npos
                         ? 1
                         : unsigned(std::stoul(part.substr(caret + 1)));
        if (p < 2 || e < 1) throw std::invalid_argument("bad factor: " + part);
        if (!is_probable_prime(p)) throw std::invalid_argument("not prime: " + p.str());
        out.emplace_back(p, e);
    }
    if (out.empty()) throw std::invalid_argument("empty factorization");
    std::sort(out.begin(), out.end());
    return out;
}

// "j=p^e*..." override clauses, offset may be negative
std::map<int, BigFactorization> parse_overrides(const std::vector<std::string>& clauses) {
    std::map<int, BigFactorization> out;
    for (auto& c : clauses) {
        std::size_t eq = c.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("override must be offset=factors: " + c);
        int j = std::stoi(c.substr(0, eq));
        std::string rhs = c.substr(eq + 1);
        out[j] = rhs == "1" ? BigFactorization{} : parse_factors(rhs);
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"base-B digit economy toolkit"};
    app.require_subcommand(1);

    int base = 10;
    unsigned threads = 0;
    bool tsv = false;
    app.add_option("--base", base, "radix, 2..64")
        ->envname("ECONUM_BASE")
        ->capture_default_str();
    app.add_option("--threads", threads, "scan workers, 0 = all cores")
        ->envname("ECONUM_THREADS");
    app.add_flag("--tsv", tsv, "columnar output where supported (histogram)");
    app.add_flag("--json", "line-delimited JSON output (the default)");

    auto* classify_cmd = app.add_subcommand("classify", "classify integers");
    std::vector<std::string> ns;
    std::string given_factors;
    classify_cmd->add_option("n", ns, "integers to classify")->required();
    classify_cmd->add_option("--factors", given_factors,
                             "known factorization p^e*p^e, allows n >= 2^64");

    auto* hist_cmd = app.add_subcommand("hist", "histogram of h over [lo, hi)");
    std::uint64_t lo = 1, hi = 0, segment = 1u << 20;
    std::string checkpoint;
    hist_cmd->add_option("--lo", lo, "range start")->capture_default_str();
    hist_cmd->add_option("--hi", hi, "range end, exclusive")->required();
    hist_cmd->add_option("--segment", segment, "sieve segment size")
        ->envname("ECONUM_SEGMENT")
        ->capture_default_str();
    hist_cmd->add_option("--checkpoint", checkpoint, "resumable progress file");

    auto* runs_cmd = app.add_subcommand("runs", "maximal runs with h >= threshold");
    std::uint64_t rlo = 2, rhi = 0, min_len = 1;
    std::string predicate = "economical";
    int min_h_flag = 0;
    bool min_h_set = false;
    runs_cmd->add_option("--lo", rlo, "range start")->capture_default_str();
    runs_cmd->add_option("--hi", rhi, "range end, exclusive")->required();
    runs_cmd->add_option("--predicate", predicate, "economical or frugal")
        ->check(CLI::IsMember({"economical", "frugal"}))
        ->capture_default_str();
    runs_cmd->add_option("--min-h", min_h_flag, "explicit h threshold, overrides --predicate")
        ->each([&](const std::string&) { min_h_set = true; });
    runs_cmd->add_option("--min-len", min_len, "minimum run length")->capture_default_str();

    auto* first_cmd = app.add_subcommand("first", "smallest n meeting an h bound");
    int at_least = 0, at_most = 0;
    std::uint64_t limit = 0;
    auto* al = first_cmd->add_option("--at-least", at_least, "find first h(n) >= k");
    auto* am = first_cmd->add_option("--at-most", at_most, "find first h(n) <= k");
    al->excludes(am);
    first_cmd->add_option("--limit", limit, "search bound, inclusive")->required();

    auto* construct_cmd =
        app.add_subcommand("construct", "plan and search a run of consecutive k-frugal numbers");
    unsigned t = 0;
    int k = 0;
    std::string variant = "baseline";
    std::vector<std::string> override_clauses;
    std::uint64_t x_start = 0, x_limit = 1'000'000;
    bool plan_only = false, no_verify = false;
    construct_cmd->add_option("--t", t, "run length")->required();
    construct_cmd->add_option("--k", k, "frugality threshold")->capture_default_str();
    construct_cmd->add_option("--variant", variant, "baseline, shifted or power-m0")
        ->capture_default_str();
    construct_cmd->add_option("--m-override", override_clauses,
                              "offset=p^e*... multiplier override, repeatable");
    construct_cmd->add_option("--x-start", x_start, "first x to try")->capture_default_str();
    construct_cmd->add_option("--x-limit", x_limit, "exclusive x bound")
        ->envname("ECONUM_X_LIMIT")
        ->capture_default_str();
    construct_cmd->add_flag("--plan-only", plan_only, "emit the plan and stop");
    construct_cmd->add_flag("--no-verify", no_verify, "skip verification of a found run");

    auto* extravagant_cmd =
        app.add_subcommand("extravagant", "construct n with h(n) = -k exactly");
    int xk = 1;
    extravagant_cmd->add_option("--k", xk, "extravagance depth")->capture_default_str();

    // let --base and friends appear after the subcommand name too
    for (auto* sc : app.get_subcommands([](const CLI::App*) { return true; }))
        sc->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        Base B(base);
        ScanOptions opts;
        opts.threads = threads;

        if (*classify_cmd) {
            if (!given_factors.empty() && ns.size() != 1)
                throw std::invalid_argument("--factors applies to exactly one n");
            for (auto& s : ns) {
                BigInt n(s);
                if (n < 1) throw std::invalid_argument("n must be >= 1");
                if (given_factors.empty()) {
                    if (n > BigInt(std::uint64_t(-1)))
                        throw std::invalid_argument(
                            "n exceeds 2^64; pass --factors with its factorization");
                    emit(report_json(classify(n.convert_to<std::uint64_t>(), B)));
                } else {
                    BigFactorization f = n == 1 ? BigFactorization{} : parse_factors(given_factors);
                    if (big_value(f) != n)
                        throw std::invalid_argument("--factors does not multiply out to n");
                    BigReport r;
                    r.n = n;
                    r.factors = std::move(f);
                    r.delta = delta(n, B);
                    r.phi = phi_big(r.factors, B);
                    r.h = r.delta - r.phi;
                    r.cls = class_of_h(r.h);
                    emit(report_json(r));
                }
            }
        } else if (*hist_cmd) {
            opts.segment_size = segment;
            opts.checkpoint = checkpoint;
            auto result = histogram(lo, hi, B, opts);
            for (auto& [hv, count] : result.counts) {
                if (tsv)
                    std::cout << hv << "\t" << count << "\n";
                else
                    emit({{"h", hv}, {"count", count}});
            }
            if (!tsv) emit({{"total", result.total()}});
        } else if (*runs_cmd) {
            int min_h = min_h_set ? min_h_flag : (predicate == "frugal" ? 1 : 0);
            for (auto& r : find_runs(rlo, rhi, B, min_h, min_len, opts))
                emit({{"start", r.start}, {"length", r.length}, {"min_h", r.min_h}});
        } else if (*first_cmd) {
            if (!*al && !*am) throw std::invalid_argument("need --at-least or --at-most");
            auto target = *al ? HTarget::at_least : HTarget::at_most;
            auto n = first_with_h(target, *al ? at_least : at_most, B, limit, opts);
            if (n)
                emit({{"found", true}, {"n", *n}});
            else
                emit({{"found", false}});
        } else if (*construct_cmd) {
            auto plan = build_plan(t, k, B, variant_from_name(variant),
                                   parse_overrides(override_clauses));
            std::cout << plan_to_json(plan) << "\n";
            if (plan_only) return 0;
            auto found = dickson_search(plan, x_start, x_limit);
            if (!found) {
                emit({{"found", false}, {"x_start", x_start}, {"x_limit", x_limit}});
                return 0;
            }
            emit({{"found", true}, {"x", found->x.str()}, {"N", found->N.str()}});
            if (!no_verify)
                for (auto& r : verify_run(plan, found->N)) emit(report_json(r));
        } else if (*extravagant_cmd) {
            auto r = build_extravagant(xk, B);
            json primes = json::array();
            for (auto& p : r.primes) primes.push_back(p.str());
            json out = report_json(r.report);
            out["t"] = r.t;
            out["primes"] = std::move(primes);
            emit(out);
        }
    } catch (const std::exception& e) {
        std::cerr << "econum: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
