#pragma once

#include <cstdint>
#include <vector>

namespace bfcert {

/// SplitMix64 generator. Small state, cheap to derive per-trial substreams from,
/// and fully portable: the same (seed, stream) pair yields the same sequence on
/// every platform, which the reproducibility contracts rely on.
struct SplitMix64 {
    uint64_t state = 0;

    SplitMix64() = default;
    explicit SplitMix64(uint64_t seed) : state(seed) {}

    static uint64_t mix(uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    uint64_t next() {
        state += 0x9e3779b97f4a7c15ull;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Unbiased uniform draw from [0, bound). Lemire multiply-shift with rejection.
    uint64_t below(uint64_t bound) {
        unsigned __int128 m = (unsigned __int128)next() * bound;
        auto lo = (uint64_t)m;
        if (lo < bound) {
            uint64_t threshold = (-bound) % bound;
            while (lo < threshold) {
                m = (unsigned __int128)next() * bound;
                lo = (uint64_t)m;
            }
        }
        return (uint64_t)(m >> 64);
    }

    /// Uniform double in [0, 1).
    double unit() { return (double)(next() >> 11) * 0x1.0p-53; }
};

/// Counter-derived substream: trial/attempt index -> independent generator.
/// Worker scheduling can then never change what a given trial sees.
inline SplitMix64 stream_rng(uint64_t seed, uint64_t stream) {
    return SplitMix64(SplitMix64::mix(seed) ^ SplitMix64::mix(stream ^ 0x5851f42d4c957f2dull));
}

/// Draws k distinct indices from [0, n) by partial Fisher-Yates over a persistent
/// identity permutation; swaps are undone after each draw so a sampler instance
/// costs O(k) per call after the first.
class SubsetSampler {
  public:
    void reset(uint32_t n) {
        perm_.resize(n);
        for (uint32_t i = 0; i < n; ++i) perm_[i] = i;
        n_ = n;
    }

    /// Result is valid until the next call; entries are in selection order.
    const std::vector<uint32_t>& sample(uint32_t k, SplitMix64& rng) {
        out_.clear();
        swaps_.clear();
        for (uint32_t i = 0; i < k; ++i) {
            auto j = (uint32_t)(i + rng.below(n_ - i));
            std::swap(perm_[i], perm_[j]);
            swaps_.push_back(j);
            out_.push_back(perm_[i]);
        }
        for (uint32_t i = k; i-- > 0;) std::swap(perm_[i], perm_[swaps_[i]]);
        return out_;
    }

  private:
    std::vector<uint32_t> perm_;
    std::vector<uint32_t> swaps_;
    std::vector<uint32_t> out_;
    uint32_t n_ = 0;
};

/// One-shot convenience wrapper; returns a sorted index subset.
std::vector<uint32_t> sample_index_subset(uint32_t n, uint32_t k, SplitMix64& rng);

}
