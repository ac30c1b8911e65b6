#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "walkscan/graph.hpp"

namespace walkscan {

/// splitmix64 finalizer; used to derive independent seeds.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Counter scheme for reproducible trials: every (stream, index) pair maps
/// the master seed to an independent engine seed, so any single trial can
/// be replayed without running the ones before it.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t index) {
    return mix64(mix64(master ^ mix64(stream)) ^ mix64(index));
}

/// Unbiased integer in [0, n) by rejection; avoids the library-defined
/// behavior of std::uniform_int_distribution so sequences are identical
/// across standard libraries.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
        std::uint64_t r = rng();
        if (r >= threshold) return r % n;
    }
}

/// k distinct elements of `pool`, drawn uniformly by partial Fisher-Yates.
/// The pool is taken by value; the draw order is deterministic in the rng.
inline std::vector<NodeId> sample_without_replacement(std::vector<NodeId> pool,
                                                      std::size_t k,
                                                      std::mt19937_64& rng) {
    if (k > pool.size()) k = pool.size();
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + static_cast<std::size_t>(uniform_below(rng, pool.size() - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

/// ceil(n * fraction) with a guard against float noise in products such as
/// 30 * 0.1 = 3.0000000000000004.
inline std::size_t ceil_fraction(std::size_t n, double fraction) {
    double raw = static_cast<double>(n) * fraction;
    auto value = static_cast<std::size_t>(raw);
    if (raw - static_cast<double>(value) > 1e-9) ++value;
    return value;
}

/// Uniform seed sample from the positive-degree members of `pool`. Returns
/// an empty set when no member has positive degree.
inline NodeSet sample_seeds(const Graph& g, const NodeSet& pool, std::size_t count,
                            std::mt19937_64& rng) {
    std::vector<NodeId> eligible;
    eligible.reserve(pool.size());
    for (NodeId v : pool)
        if (g.degree(v) > 0) eligible.push_back(v);
    if (eligible.empty()) return {};
    return NodeSet(sample_without_replacement(std::move(eligible), count, rng));
}

}  // namespace walkscan
