#pragma once

#include <cstdint>

#include "bfcert/bf_decoder.hpp"
#include "bfcert/code_model.hpp"
#include "bfcert/rng.hpp"

namespace bfcert {

struct TrialPlan {
    uint64_t t = 0;
    uint64_t stop_failures = 100;
    uint64_t max_trials = 1000000000ull;
    uint64_t seed = 0;
    unsigned workers = 0;           // 0: hardware concurrency
    uint64_t progress_interval = 0; // 0: silent; else stderr checkpoint every N trials
};

struct DfrEstimate {
    uint64_t trials = 0;
    uint64_t failures = 0;
    double p_hat = 0;
    double std_err = 0;
    uint64_t seed = 0;
    bool reached_stop = false; // false: max_trials exhausted first
};

/// Uniform weight-t error support over all C(n, t) choices.
Support sample_error_support(uint32_t n, uint32_t t, SplitMix64& rng);
BitVec sample_error(uint32_t n, uint32_t t, SplitMix64& rng);

/// Seeded single-iteration failure-rate estimate for the fixed-weight channel.
/// Trial i draws from the substream (seed, i), so the outcome is a pure
/// function of (code, thresholds, plan) regardless of worker count: the run
/// stops after the trial in which the stop_failures-th failure lands.
DfrEstimate estimate_dfr(const ParityCheckMatrix& H, const TrialPlan& plan, const BfConfig& cfg);

/// Same harness over a BSC(rho): each trial flips every bit independently.
/// plan.t is ignored.
DfrEstimate estimate_bsc_dfr(const ParityCheckMatrix& H, double rho, const TrialPlan& plan,
                             const BfConfig& cfg);

struct ExactDfr {
    uint64_t failures = 0;
    uint64_t total = 0; // C(n, t)
};

/// Decodes every weight-t pattern. Refuses C(n, t) > 1e7.
ExactDfr exhaustive_dfr(const ParityCheckMatrix& H, uint32_t t, const BfConfig& cfg);

}
