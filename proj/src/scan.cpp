#include "econum/scan.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <thread>

namespace econum {

namespace {

using u64 = std::uint64_t;
using u32 = std::uint32_t;

// Primes up to and including `limit` by plain Eratosthenes.
std::vector<u32> primes_upto(u64 limit) {
    std::vector<u32> out;
    if (limit < 2) return out;
    std::vector<bool> comp(limit + 1, false);
    for (u64 p = 2; p <= limit; ++p) {
        if (comp[p]) continue;
        out.push_back(u32(p));
        for (u64 q = p * p; q <= limit; q += p) comp[q] = true;
    }
    return out;
}

u64 isqrt_u64(u64 n) {
    u64 r = u64(std::sqrt(double(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Shared per-scan tables: sieving primes with their digit lengths,
// powers of B, and delta' of small exponents.
struct SieveContext {
    Base base;
    u64 hi;
    std::vector<u32> primes;
    std::vector<std::uint8_t> prime_delta;
    std::vector<u64> powers;              // powers[i] = B^i (clamped at max)
    std::array<std::uint8_t, 66> dprime;  // delta'(e) for e in [1, 65]

    SieveContext(u64 hi_, Base B) : base(B), hi(hi_) {
        primes = primes_upto(hi_ > 2 ? isqrt_u64(hi_ - 1) : 0);
        prime_delta.reserve(primes.size());
        for (u32 p : primes) prime_delta.push_back(std::uint8_t(delta(u64(p), B)));
        powers.push_back(1);
        while (powers.back() <= std::numeric_limits<u64>::max() / u64(B.value))
            powers.push_back(powers.back() * u64(B.value));
        powers.push_back(std::numeric_limits<u64>::max());
        dprime[0] = 0;
        for (u64 e = 1; e <= 65; ++e) dprime[e] = std::uint8_t(delta_prime(e, base));
    }
};

// delta via the context power table.
int delta_pow(const SieveContext& ctx, u64 n) {
    auto it = std::upper_bound(ctx.powers.begin(), ctx.powers.end(), n);
    return int(it - ctx.powers.begin());
}

// Compute h(n) for every n in [lo, hi) into out (int8). lo >= 2.
template <class W>
void h_segment(const SieveContext& ctx, u64 lo, u64 hi, std::int8_t* out,
               std::vector<W>& residual, std::vector<std::int16_t>& phi) {
    const std::size_t size = std::size_t(hi - lo);
    residual.resize(size);
    phi.resize(size);
    for (std::size_t i = 0; i < size; ++i) residual[i] = W(lo + i);
    std::fill(phi.begin(), phi.end(), std::int16_t(0));

    const int dB2 = delta(u64(2), ctx.base);
    // p = 2 via trailing-zero count
    if (!ctx.primes.empty() && ctx.primes[0] == 2) {
        for (u64 n = lo + (lo & 1 ? 1 : 0); n < hi; n += 2) {
            std::size_t i = std::size_t(n - lo);
            unsigned e = unsigned(std::countr_zero(n));
            residual[i] = W(n >> e);
            phi[i] = std::int16_t(dB2 + ctx.dprime[e]);
        }
    }
    for (std::size_t pi = 1; pi < ctx.primes.size(); ++pi) {
        const u64 p = ctx.primes[pi];
        const int dp = ctx.prime_delta[pi];
        u64 first = ((lo + p - 1) / p) * p;
        if (p * p >= hi) {
            // no multiple of p^2 in range: exponent is always 1
            for (u64 n = first; n < hi; n += p) {
                std::size_t i = std::size_t(n - lo);
                residual[i] = W(residual[i] / W(p));
                phi[i] = std::int16_t(phi[i] + dp);
            }
        } else {
            for (u64 n = first; n < hi; n += p) {
                std::size_t i = std::size_t(n - lo);
                W r = W(residual[i] / W(p));
                unsigned e = 1;
                while (r % W(p) == 0) {
                    r = W(r / W(p));
                    ++e;
                }
                residual[i] = r;
                phi[i] = std::int16_t(phi[i] + dp + ctx.dprime[e]);
            }
        }
    }
    // closing pass: leftover residual > 1 is prime (exceeds sqrt(hi))
    int dn = delta_pow(ctx, lo);
    u64 next_pow = dn < int(ctx.powers.size()) ? ctx.powers[dn] : std::numeric_limits<u64>::max();
    for (std::size_t i = 0; i < size; ++i) {
        const u64 n = lo + i;
        if (n >= next_pow) {
            ++dn;
            next_pow = dn < int(ctx.powers.size()) ? ctx.powers[dn]
                                                   : std::numeric_limits<u64>::max();
        }
        int ph = phi[i];
        if (residual[i] > 1) ph += delta_pow(ctx, u64(residual[i]));
        out[i] = std::int8_t(dn - ph);
    }
}

struct CheckpointState {
    u64 next = 0;
    std::map<int, u64> counts;
};

std::optional<CheckpointState> load_checkpoint(const std::string& path, u64 lo, u64 hi,
                                               Base B, u64 segment) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string magic, ver;
    in >> magic >> ver;
    if (magic != "econum-hist-checkpoint" || ver != "v1") return std::nullopt;
    u64 clo, chi, cseg;
    int cbase;
    std::string key;
    in >> key >> clo >> key >> chi >> key >> cbase >> key >> cseg;
    if (clo != lo || chi != hi || cbase != B.value || cseg != segment) return std::nullopt;
    CheckpointState st;
    in >> key >> st.next;
    int hval;
    u64 cnt;
    while (in >> hval >> cnt) st.counts[hval] = cnt;
    if (st.next < lo || st.next > hi) return std::nullopt;
    return st;
}

void save_checkpoint(const std::string& path, u64 lo, u64 hi, Base B, u64 segment,
                     const CheckpointState& st) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << "econum-hist-checkpoint v1\n";
        out << "lo " << lo << " hi " << hi << " base " << B.value << " segment " << segment
            << "\n";
        out << "next " << st.next << "\n";
        for (auto& [h, c] : st.counts) out << h << " " << c << "\n";
    }
    std::filesystem::rename(tmp, path);
}

// Drives h-computation over [lo, hi) in segments, lo >= 2.
// consume(seg_lo, seg_hi, h_values) is called in segment order and may
// return false to stop early. Segments are computed by a worker pool in
// batches; consumption stays strictly ordered so results are deterministic.
bool scan_h(u64 lo, u64 hi, Base B, const ScanOptions& opts,
            const std::function<bool(u64, u64, const std::int8_t*)>& consume) {
    if (lo >= hi) return true;
    const u64 seg = std::max<u64>(opts.segment_size, 64);
    SieveContext ctx(hi, B);
    unsigned nthreads = opts.threads ? opts.threads : std::thread::hardware_concurrency();
    if (nthreads == 0) nthreads = 1;
    const u64 nseg = (hi - lo + seg - 1) / seg;
    nthreads = unsigned(std::min<u64>(nthreads, nseg));

    const bool narrow = hi <= u64(std::numeric_limits<u32>::max()) + 1;

    if (nthreads <= 1) {
        std::vector<std::int8_t> buf(std::size_t(std::min<u64>(seg, hi - lo)));
        std::vector<u32> res32;
        std::vector<u64> res64;
        std::vector<std::int16_t> ph;
        for (u64 s = lo; s < hi; s += seg) {
            u64 e = std::min(hi, s + seg);
            buf.resize(std::size_t(e - s));
            if (narrow)
                h_segment<u32>(ctx, s, e, buf.data(), res32, ph);
            else
                h_segment<u64>(ctx, s, e, buf.data(), res64, ph);
            if (!consume(s, e, buf.data())) return false;
        }
        return true;
    }

    // batch-synchronous pool: compute nthreads segments at a time, then
    // consume them in index order
    for (u64 batch = 0; batch < nseg; batch += nthreads) {
        const unsigned in_batch = unsigned(std::min<u64>(nthreads, nseg - batch));
        std::vector<std::vector<std::int8_t>> bufs(in_batch);
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < in_batch; ++w) {
            pool.emplace_back([&, w] {
                u64 s = lo + (batch + w) * seg;
                u64 e = std::min(hi, s + seg);
                bufs[w].resize(std::size_t(e - s));
                std::vector<u32> res32;
                std::vector<u64> res64;
                std::vector<std::int16_t> ph;
                if (narrow)
                    h_segment<u32>(ctx, s, e, bufs[w].data(), res32, ph);
                else
                    h_segment<u64>(ctx, s, e, bufs[w].data(), res64, ph);
            });
        }
        for (auto& t : pool) t.join();
        for (unsigned w = 0; w < in_batch; ++w) {
            u64 s = lo + (batch + w) * seg;
            u64 e = std::min(hi, s + seg);
            if (!consume(s, e, bufs[w].data())) return false;
        }
    }
    return true;
}

} // namespace

std::uint64_t Histogram::total() const {
    u64 t = 0;
    for (auto& [h, c] : counts) t += c;
    return t;
}

void sieve_segment(std::uint64_t lo, std::uint64_t hi, Base B,
                   const std::function<void(std::uint64_t, const Factorization&)>& consumer,
                   std::uint64_t segment_size) {
    if (lo < 2 || lo >= hi)
        throw std::invalid_argument("sieve_segment: need 2 <= lo < hi");
    if (segment_size < 64) segment_size = 64;
    SieveContext ctx(hi, B);
    std::vector<u64> residual;
    std::vector<Factorization> facs;
    for (u64 s = lo; s < hi; s += segment_size) {
        const u64 e = std::min(hi, s + segment_size);
        const std::size_t size = std::size_t(e - s);
        residual.assign(size, 0);
        facs.assign(size, Factorization{});
        for (std::size_t i = 0; i < size; ++i) residual[i] = s + i;
        for (std::size_t pi = 0; pi < ctx.primes.size(); ++pi) {
            const u64 p = ctx.primes[pi];
            for (u64 n = ((s + p - 1) / p) * p; n < e; n += p) {
                std::size_t i = std::size_t(n - s);
                u64 r = residual[i] / p;
                unsigned ex = 1;
                while (r % p == 0) {
                    r /= p;
                    ++ex;
                }
                residual[i] = r;
                facs[i].factors.emplace_back(p, ex);
            }
        }
        for (std::size_t i = 0; i < size; ++i) {
            if (residual[i] > 1) facs[i].factors.emplace_back(residual[i], 1);
            consumer(s + i, facs[i]);
        }
    }
}

Histogram histogram(std::uint64_t lo, std::uint64_t hi, Base B, const ScanOptions& opts) {
    if (lo < 1 || lo >= hi)
        throw std::invalid_argument("histogram: need 1 <= lo < hi");
    Histogram hist;
    hist.lo = lo;
    hist.hi = hi;
    u64 start = lo;
    if (lo == 1) {
        hist.counts[1] += 1; // h(1) = 1, frugal by definition
        start = 2;
    }
    if (start >= hi) return hist;

    CheckpointState st;
    st.next = start;
    const u64 seg = std::max<u64>(opts.segment_size, 64);
    if (!opts.checkpoint.empty()) {
        if (auto loaded = load_checkpoint(opts.checkpoint, lo, hi, B, seg)) st = *loaded;
    }
    for (auto& [h, c] : st.counts) hist.counts[h] += c;

    std::array<u64, 256> local{};
    ScanOptions o = opts;
    o.segment_size = seg;
    scan_h(st.next, hi, B, o, [&](u64 s, u64 e, const std::int8_t* hv) {
        local.fill(0);
        const std::size_t size = std::size_t(e - s);
        for (std::size_t i = 0; i < size; ++i) ++local[std::size_t(int(hv[i]) + 128)];
        for (int v = 0; v < 256; ++v)
            if (local[v]) {
                hist.counts[v - 128] += local[v];
                st.counts[v - 128] += local[v];
            }
        st.next = e;
        if (!opts.checkpoint.empty())
            save_checkpoint(opts.checkpoint, lo, hi, B, seg, st);
        return true;
    });
    if (!opts.checkpoint.empty() && st.next == hi)
        std::filesystem::remove(opts.checkpoint);
    return hist;
}

std::vector<RunRecord> find_runs(std::uint64_t lo, std::uint64_t hi, Base B,
                                 int min_h, std::uint64_t min_len, const ScanOptions& opts) {
    if (lo < 1 || lo >= hi)
        throw std::invalid_argument("find_runs: need 1 <= lo < hi");
    std::vector<RunRecord> out;
    std::optional<RunRecord> open;
    auto feed = [&](u64 n, bool ok) {
        if (ok) {
            if (open && open->start + open->length == n)
                ++open->length;
            else {
                if (open && open->length >= min_len) out.push_back(*open);
                open = RunRecord{n, 1, min_h};
            }
        } else if (open) {
            if (open->length >= min_len) out.push_back(*open);
            open.reset();
        }
    };
    u64 start = lo;
    if (lo == 1) {
        feed(1, 1 >= min_h); // h(1) = 1
        start = 2;
    }
    if (start < hi) {
        scan_h(start, hi, B, opts, [&](u64 s, u64 e, const std::int8_t* hv) {
            for (u64 n = s; n < e; ++n) feed(n, int(hv[n - s]) >= min_h);
            return true;
        });
    }
    if (open && open->length >= min_len) out.push_back(*open);
    return out;
}

std::optional<std::uint64_t> first_with_h(HTarget target, int k, Base B,
                                          std::uint64_t limit, const ScanOptions& opts) {
    if (limit < 1) return std::nullopt;
    if (target == HTarget::at_least ? (1 >= k) : (1 <= k)) return 1; // h(1) = 1
    std::optional<u64> found;
    if (limit >= 2) {
        scan_h(2, limit + 1, B, opts, [&](u64 s, u64 e, const std::int8_t* hv) {
            for (u64 n = s; n < e; ++n) {
                int h = int(hv[n - s]);
                if (target == HTarget::at_least ? (h >= k) : (h <= k)) {
                    found = n;
                    return false;
                }
            }
            return true;
        });
    }
    return found;
}

} // namespace econum
