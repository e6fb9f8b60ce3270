#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "econum/economy.hpp"

namespace econum {

struct ScanOptions {
    std::uint64_t segment_size = 1u << 20;
    unsigned threads = 0;      // 0 = hardware concurrency
    std::string checkpoint;    // histogram only; empty = no checkpointing
};

/// Counts of each h value over [lo, hi).
struct Histogram {
    std::uint64_t lo = 0, hi = 0;
    std::map<int, std::uint64_t> counts;

    std::uint64_t total() const;
};

/// A maximal run of consecutive integers with h >= min_h.
struct RunRecord {
    std::uint64_t start = 0;
    std::uint64_t length = 0;
    int min_h = 0;

    bool operator==(const RunRecord&) const = default;
};

enum class HTarget { at_least, at_most };

/// Streams the complete factorization of every n in [lo, hi), in order,
/// using a segmented sieve driven by primes up to sqrt(hi). Output per n
/// is identical to factor_u64(n).
void sieve_segment(std::uint64_t lo, std::uint64_t hi, Base B,
                   const std::function<void(std::uint64_t, const Factorization&)>& consumer,
                   std::uint64_t segment_size = 1u << 20);

/// Histogram of h over [lo, hi); deterministic regardless of segmentation
/// and thread count. With opts.checkpoint set, partial results are saved
/// after each completed stretch and a matching run resumes from them.
Histogram histogram(std::uint64_t lo, std::uint64_t hi, Base B, const ScanOptions& opts = {});

/// All maximal runs of h >= min_h with length >= min_len in [lo, hi),
/// ordered by start. Runs straddling segment boundaries are merged.
std::vector<RunRecord> find_runs(std::uint64_t lo, std::uint64_t hi, Base B,
                                 int min_h, std::uint64_t min_len,
                                 const ScanOptions& opts = {});

/// Smallest n <= limit with h(n) >= k (at_least) or h(n) <= k (at_most).
std::optional<std::uint64_t> first_with_h(HTarget target, int k, Base B,
                                          std::uint64_t limit, const ScanOptions& opts = {});

} // namespace econum
