#pragma once

#include <cstdint>
#include <optional>

#include "bfcert/bigint.hpp"
#include "bfcert/code_model.hpp"
#include "bfcert/rng.hpp"

namespace bfcert {

struct KeygenPolicy {
    uint32_t p = 0;
    uint32_t v = 0;
    uint64_t t = 0;
    int32_t target_log2_dfr = -80; // accept iff certified bound < 2^target
    uint64_t max_attempts = 1000;
    uint64_t seed = 0;
    std::optional<uint32_t> fixed_b; // empty: sweep b in [1, v] for the minimum
    unsigned workers = 0;            // 0: hardware concurrency
};

struct KeyRecord {
    Support s0, s1;
    uint32_t b = 0;
    BigInt numerator;   // certified bound is min{1, numerator / denominator}
    BigInt denominator; // C(2p, t)
    double log2_bound = 0;
    uint64_t attempt = 0;
    uint64_t seed = 0;
    bool accepted = false;
    bool duplicate_columns = false; // auto-rejected before any counting
};

/// Uniform v-subset of [0, p), sorted.
Support sample_circulant_support(uint32_t p, uint32_t v, SplitMix64& rng);

/// Certify the key drawn from substream (policy.seed, attempt). Acceptance is
/// decided exactly: numerator * 2^-target < C(n, t), never through the float log.
KeyRecord certify_key(const KeygenPolicy& policy, uint64_t attempt);

/// Classic rejection sampling: draw, certify, keep the first acceptable key.
/// Attempts are independent substreams evaluated in parallel; the lowest
/// accepted attempt index wins, so the result is deterministic in (policy).
/// Empty when max_attempts is exhausted.
std::optional<KeyRecord> rejection_sample_key(const KeygenPolicy& policy);

struct AcceptanceExperiment {
    uint64_t keys_tested = 0;
    uint64_t accepted = 0;
    std::vector<KeyRecord> records; // one per key, in attempt order
};

/// Certify n_keys independent draws (attempt indices 0..n_keys-1) and report
/// the accepted fraction.
AcceptanceExperiment acceptance_rate_experiment(const KeygenPolicy& policy, uint64_t n_keys);

}
