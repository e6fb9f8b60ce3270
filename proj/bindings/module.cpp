#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "econum/construct.hpp"
#include "econum/scan.hpp"

namespace py = pybind11;
using namespace econum;

namespace {

py::int_ big_to_py(const BigInt& v) {
    return py::reinterpret_steal<py::int_>(
        PyLong_FromString(v.str().c_str(), nullptr, 10));
}

BigInt big_from_py(const py::object& obj) {
    return BigInt(py::cast<std::string>(py::str(obj)));
}

py::list factors_to_py(const BigFactorization& f) {
    py::list out;
    for (auto& [p, e] : f) out.append(py::make_tuple(big_to_py(p), e));
    return out;
}

py::list factors_to_py(const Factorization& f) {
    py::list out;
    for (auto& [p, e] : f.factors) out.append(py::make_tuple(p, e));
    return out;
}

BigFactorization factors_from_py(const py::iterable& pairs) {
    BigFactorization f;
    for (auto item : pairs) {
        auto pair = py::cast<py::tuple>(item);
        f.emplace_back(big_from_py(pair[0]), py::cast<unsigned>(pair[1]));
    }
    std::sort(f.begin(), f.end());
    return f;
}

py::dict report_to_py(const EconomyReport& r) {
    py::dict d;
    d["n"] = r.n;
    d["delta"] = r.delta;
    d["phi"] = r.phi;
    d["h"] = r.h;
    d["class"] = class_name(r.cls);
    d["factors"] = factors_to_py(r.factorization);
    d["exact"] = true;
    return d;
}

py::dict report_to_py(const BigReport& r) {
    py::dict d;
    d["n"] = big_to_py(r.n);
    d["delta"] = r.delta;
    d["phi"] = r.phi;
    d["h"] = r.h;
    d["class"] = class_name(r.cls);
    d["factors"] = factors_to_py(r.factors);
    d["exact"] = r.exact;
    return d;
}

ScanOptions make_opts(std::uint64_t segment_size, unsigned threads,
                      const std::string& checkpoint) {
    ScanOptions opts;
    opts.segment_size = segment_size;
    opts.threads = threads;
    opts.checkpoint = checkpoint;
    return opts;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "base-B digit economy toolkit";

    m.def(
        "delta",
        [](const py::object& n, int base) { return delta(big_from_py(n), Base(base)); },
        py::arg("n"), py::arg("base") = 10,
        "number of base-B digits of n");
    m.def(
        "h", [](std::uint64_t n, int base) { return h(n, Base(base)); }, py::arg("n"),
        py::arg("base") = 10, "digit surplus delta(n) - phi(n)");
    m.def(
        "classify",
        [](std::uint64_t n, int base) { return report_to_py(classify(n, Base(base))); },
        py::arg("n"), py::arg("base") = 10);
    m.def(
        "classify_factored",
        [](const py::object& n, const py::iterable& factors, int base) {
            BigInt v = big_from_py(n);
            BigFactorization f = factors_from_py(factors);
            if (big_value(f) != v)
                throw std::invalid_argument("factors do not multiply out to n");
            BigReport r;
            r.n = v;
            r.factors = std::move(f);
            r.delta = delta(v, Base(base));
            r.phi = phi_big(r.factors, Base(base));
            r.h = r.delta - r.phi;
            r.cls = class_of_h(r.h);
            return report_to_py(r);
        },
        py::arg("n"), py::arg("factors"), py::arg("base") = 10,
        "classification of an arbitrary-precision n from a known factorization");

    m.def(
        "is_prime", [](std::uint64_t n) { return is_prime(n); }, py::arg("n"));
    m.def(
        "is_probable_prime",
        [](const py::object& n) { return is_probable_prime(big_from_py(n)); },
        py::arg("n"));
    m.def(
        "factor",
        [](std::uint64_t n) { return factors_to_py(factor_u64(n)); }, py::arg("n"));

    m.def(
        "histogram",
        [](std::uint64_t lo, std::uint64_t hi, int base, std::uint64_t segment_size,
           unsigned threads, const std::string& checkpoint) {
            auto result =
                histogram(lo, hi, Base(base), make_opts(segment_size, threads, checkpoint));
            py::dict counts;
            for (auto& [hv, c] : result.counts) counts[py::int_(hv)] = c;
            return counts;
        },
        py::arg("lo"), py::arg("hi"), py::arg("base") = 10,
        py::arg("segment_size") = std::uint64_t(1) << 20, py::arg("threads") = 0,
        py::arg("checkpoint") = std::string(),
        "counts of each h value over [lo, hi)");
    m.def(
        "find_runs",
        [](std::uint64_t lo, std::uint64_t hi, int base, int min_h, std::uint64_t min_len,
           std::uint64_t segment_size, unsigned threads) {
            py::list out;
            for (auto& r : find_runs(lo, hi, Base(base), min_h, min_len,
                                     make_opts(segment_size, threads, {})))
                out.append(py::make_tuple(r.start, r.length, r.min_h));
            return out;
        },
        py::arg("lo"), py::arg("hi"), py::arg("base") = 10, py::arg("min_h") = 0,
        py::arg("min_len") = 1, py::arg("segment_size") = std::uint64_t(1) << 20,
        py::arg("threads") = 0,
        "maximal runs of h >= min_h as (start, length, min_h) tuples");
    m.def(
        "first_with_h",
        [](int k, bool at_least, int base, std::uint64_t limit) -> py::object {
            auto n = first_with_h(at_least ? HTarget::at_least : HTarget::at_most, k,
                                  Base(base), limit);
            if (!n) return py::none();
            return py::cast(*n);
        },
        py::arg("k"), py::arg("at_least") = true, py::arg("base") = 10, py::arg("limit"),
        "smallest n <= limit with h(n) >= k (or <= k with at_least=False)");

    py::class_<ConstructionPlan>(m, "Plan")
        .def_property_readonly("t", [](const ConstructionPlan& p) { return p.t; })
        .def_property_readonly("k", [](const ConstructionPlan& p) { return p.k; })
        .def_property_readonly("base", [](const ConstructionPlan& p) { return p.base; })
        .def_property_readonly("variant",
                               [](const ConstructionPlan& p) { return variant_name(p.variant); })
        .def_property_readonly("f0", [](const ConstructionPlan& p) { return big_to_py(p.f0); })
        .def_property_readonly("M", [](const ConstructionPlan& p) { return big_to_py(p.M); })
        .def_property_readonly("N0", [](const ConstructionPlan& p) { return big_to_py(p.N0); })
        .def_property_readonly("entries",
                               [](const ConstructionPlan& p) {
                                   py::list out;
                                   for (auto& e : p.entries) {
                                       py::dict d;
                                       d["offset"] = e.offset;
                                       d["f"] = big_to_py(e.f);
                                       d["m"] = big_to_py(e.m);
                                       d["m_factors"] = factors_to_py(e.m_factors);
                                       d["modulus"] = big_to_py(e.modulus);
                                       d["S"] = big_to_py(e.S);
                                       d["Mj"] = big_to_py(e.Mj);
                                       out.append(d);
                                   }
                                   return out;
                               })
        .def("to_json", [](const ConstructionPlan& p) { return plan_to_json(p); });

    m.def(
        "build_plan",
        [](unsigned t, int k, int base, const std::string& variant, const py::dict& overrides) {
            std::map<int, BigFactorization> ov;
            for (auto item : overrides)
                ov[py::cast<int>(item.first)] =
                    factors_from_py(py::cast<py::iterable>(item.second));
            return build_plan(t, k, Base(base), variant_from_name(variant), ov);
        },
        py::arg("t"), py::arg("k") = 0, py::arg("base") = 10,
        py::arg("variant") = "baseline", py::arg("m_overrides") = py::dict(),
        "moduli and CRT solution for a run of t consecutive k-frugal numbers");
    m.def("plan_from_json", &plan_from_json, py::arg("text"));
    m.def(
        "dickson_search",
        [](const ConstructionPlan& plan, std::uint64_t x_start,
           std::uint64_t x_limit) -> py::object {
            auto r = dickson_search(plan, x_start, x_limit);
            if (!r) return py::none();
            return py::make_tuple(big_to_py(r->x), big_to_py(r->N));
        },
        py::arg("plan"), py::arg("x_start") = 0, py::arg("x_limit") = 1'000'000,
        "least x making every cofactor prime, as (x, N); None when exhausted");
    m.def(
        "verify_run",
        [](const ConstructionPlan& plan, const py::object& N, py::object lo, py::object hi) {
            BigInt n = big_from_py(N);
            auto reports = lo.is_none() || hi.is_none()
                               ? verify_run(plan, n)
                               : verify_run(plan, n, py::cast<int>(lo), py::cast<int>(hi));
            py::list out;
            for (auto& r : reports) out.append(report_to_py(r));
            return out;
        },
        py::arg("plan"), py::arg("N"), py::arg("lo_offset") = py::none(),
        py::arg("hi_offset") = py::none());
    m.def(
        "verify_run_u64",
        [](std::uint64_t start, unsigned len, int base) {
            py::list out;
            for (auto& r : verify_run_u64(start, len, Base(base))) out.append(report_to_py(r));
            return out;
        },
        py::arg("start"), py::arg("len"), py::arg("base") = 10,
        "independent verification of a run by full 64-bit factorization");

    m.def(
        "build_extravagant",
        [](int k, int base) {
            auto r = build_extravagant(k, Base(base));
            py::dict d = report_to_py(r.report);
            d["t"] = r.t;
            py::list primes;
            for (auto& p : r.primes) primes.append(big_to_py(p));
            d["primes"] = std::move(primes);
            return d;
        },
        py::arg("k"), py::arg("base") = 10, "n with h(n) = -k exactly");
    m.def(
        "frugal_sample",
        [](std::uint64_t r, std::uint64_t s, int k, int base) {
            auto [n, f] = frugal_sample(r, s, k, Base(base));
            return py::make_tuple(big_to_py(n), factors_to_py(f));
        },
        py::arg("r"), py::arg("s"), py::arg("k"), py::arg("base") = 10,
        "k-frugal multiple of r coprime to s");
    m.def(
        "crt",
        [](const std::vector<std::pair<py::object, py::object>>& congruences) {
            std::vector<std::pair<BigInt, BigInt>> c;
            for (auto& [r, mm] : congruences) c.emplace_back(big_from_py(r), big_from_py(mm));
            auto [r0, m0] = crt(c);
            return py::make_tuple(big_to_py(r0), big_to_py(m0));
        },
        py::arg("congruences"), "merge x = r mod m congruences; (residue, modulus)");
}
