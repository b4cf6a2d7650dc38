#include "bfcert/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <memory>
#include <thread>

#include "bfcert/bigint.hpp"
#include "bfcert/errors.hpp"

namespace bfcert {

std::vector<uint32_t> sample_index_subset(uint32_t n, uint32_t k, SplitMix64& rng) {
    if (k > n) throw DomainError("sample_index_subset: k > n");
    SubsetSampler sampler;
    sampler.reset(n);
    std::vector<uint32_t> out = sampler.sample(k, rng);
    std::sort(out.begin(), out.end());
    return out;
}

Support sample_error_support(uint32_t n, uint32_t t, SplitMix64& rng) {
    return sample_index_subset(n, t, rng);
}

BitVec sample_error(uint32_t n, uint32_t t, SplitMix64& rng) {
    BitVec e(n, 0);
    for (uint32_t i : sample_error_support(n, t, rng)) e[i] = 1;
    return e;
}

namespace {

void validate_plan(const TrialPlan& plan) {
    if (plan.stop_failures < 1) throw ConfigError("trial plan: stop_failures must be >= 1");
    if (plan.max_trials < plan.stop_failures)
        throw ConfigError("trial plan: max_trials must be >= stop_failures");
}

// Wave-dispatched trial loop. Chunks are laid out by trial index; workers fill
// one chunk each per wave and report the failing indices, which get merged in
// index order. Early stopping therefore depends only on the plan, never on
// scheduling: the estimate ends at the trial holding the stop_failures-th
// failure.
template <typename TrialFn>
DfrEstimate run_trials(const TrialPlan& plan, uint64_t chunk_size, TrialFn&& make_worker) {
    validate_plan(plan);
    unsigned workers = plan.workers ? plan.workers : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;

    DfrEstimate est;
    est.seed = plan.seed;

    std::vector<uint64_t> ordered_failures;
    uint64_t next_base = 0, next_checkpoint = plan.progress_interval;
    bool done = false;
    while (!done && next_base < plan.max_trials) {
        const unsigned nchunks = workers;
        std::vector<std::vector<uint64_t>> chunk_failures(nchunks);
        std::vector<std::thread> pool;
        for (unsigned c = 0; c < nchunks; ++c) {
            uint64_t lo = next_base + (uint64_t)c * chunk_size;
            uint64_t hi = std::min(plan.max_trials, lo + chunk_size);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi, c] {
                auto trial_fails = make_worker();
                for (uint64_t idx = lo; idx < hi; ++idx)
                    if (trial_fails(idx)) chunk_failures[c].push_back(idx);
            });
        }
        for (auto& th : pool) th.join();
        next_base = std::min(plan.max_trials, next_base + (uint64_t)nchunks * chunk_size);

        for (auto& cf : chunk_failures)
            ordered_failures.insert(ordered_failures.end(), cf.begin(), cf.end());
        if (plan.progress_interval && next_base >= next_checkpoint) {
            std::cerr << "bf-cert: ... " << next_base << " trials, " << ordered_failures.size()
                      << " failures\n";
            while (next_checkpoint <= next_base) next_checkpoint += plan.progress_interval;
        }
        if (ordered_failures.size() >= plan.stop_failures) {
            est.reached_stop = true;
            est.failures = plan.stop_failures;
            est.trials = ordered_failures[plan.stop_failures - 1] + 1;
            done = true;
        }
    }
    if (!done) {
        est.trials = plan.max_trials;
        est.failures = ordered_failures.size();
    }
    est.p_hat = est.trials ? (double)est.failures / (double)est.trials : 0.0;
    est.std_err = est.trials ? std::sqrt(est.p_hat * (1.0 - est.p_hat) / (double)est.trials) : 0.0;
    return est;
}

} // namespace

DfrEstimate estimate_dfr(const ParityCheckMatrix& H, const TrialPlan& plan, const BfConfig& cfg) {
    validate_config(H, cfg);
    if (plan.t > H.n) throw DomainError("estimate_dfr: t > n");
    const auto t = (uint32_t)plan.t;
    const uint64_t seed = plan.seed;

    auto make_worker = [&H, &cfg, t, seed]() {
        // per-worker scratch, captured by the returned closure
        auto decoder = std::make_shared<SingleIterationDecoder>(H, cfg);
        auto sampler = std::make_shared<SubsetSampler>();
        sampler->reset(H.n);
        return [&H, decoder, sampler, t, seed](uint64_t trial) {
            SplitMix64 rng = stream_rng(seed, trial);
            const auto& support = sampler->sample(t, rng);
            return !decoder->decodes_exactly(support);
        };
    };
    return run_trials(plan, 4096, make_worker);
}

DfrEstimate estimate_bsc_dfr(const ParityCheckMatrix& H, double rho, const TrialPlan& plan,
                             const BfConfig& cfg) {
    validate_config(H, cfg);
    if (!(rho >= 0.0 && rho <= 1.0)) throw DomainError("estimate_bsc_dfr: rho outside [0, 1]");
    const uint64_t seed = plan.seed;

    auto make_worker = [&H, &cfg, rho, seed]() {
        auto decoder = std::make_shared<SingleIterationDecoder>(H, cfg);
        auto support = std::make_shared<std::vector<uint32_t>>();
        return [&H, decoder, support, rho, seed](uint64_t trial) {
            SplitMix64 rng = stream_rng(seed, trial);
            support->clear();
            for (uint32_t i = 0; i < H.n; ++i)
                if (rng.unit() < rho) support->push_back(i);
            return !decoder->decodes_exactly(*support);
        };
    };
    return run_trials(plan, 4096, make_worker);
}

ExactDfr exhaustive_dfr(const ParityCheckMatrix& H, uint32_t t, const BfConfig& cfg) {
    validate_config(H, cfg);
    if (t > H.n) throw DomainError("exhaustive_dfr: t > n");
    const BigInt& total = binomial(H.n, t);
    if (total > 10000000) throw GuardError("exhaustive_dfr: C(n, t) > 1e7");

    ExactDfr out;
    out.total = (uint64_t)total.get_ui();
    SingleIterationDecoder decoder(H, cfg);
    if (t == 0) {
        out.failures = decoder.decodes_exactly({}) ? 0 : 1;
        return out;
    }
    std::vector<uint32_t> idx(t);
    for (uint32_t i = 0; i < t; ++i) idx[i] = i;
    while (true) {
        if (!decoder.decodes_exactly(idx)) ++out.failures;
        uint32_t k = t;
        while (k > 0 && idx[k - 1] == H.n - t + (k - 1)) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (uint32_t i = k; i < t; ++i) idx[i] = idx[i - 1] + 1;
    }
    return out;
}

}
