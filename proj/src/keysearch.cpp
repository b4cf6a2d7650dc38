#include "bfcert/keysearch.hpp"

#include <algorithm>
#include <thread>

#include "bfcert/dfr_bounds.hpp"
#include "bfcert/errors.hpp"

namespace bfcert {

namespace {

void validate_policy(const KeygenPolicy& policy) {
    if (policy.v < 1 || policy.v > policy.p) throw ConfigError("keygen policy: need 1 <= v <= p");
    if (policy.t < 1 || policy.t > 2ull * policy.p)
        throw ConfigError("keygen policy: need 1 <= t <= n");
    if (policy.target_log2_dfr >= 0) throw ConfigError("keygen policy: target must be negative");
    if (policy.fixed_b && (*policy.fixed_b < 1 || *policy.fixed_b > policy.v))
        throw ConfigError("keygen policy: fixed b outside [1, v]");
}

} // namespace

Support sample_circulant_support(uint32_t p, uint32_t v, SplitMix64& rng) {
    if (v > p) throw DomainError("sample_circulant_support: v > p");
    return sample_index_subset(p, v, rng);
}

KeyRecord certify_key(const KeygenPolicy& policy, uint64_t attempt) {
    validate_policy(policy);
    const uint32_t n = 2 * policy.p;

    KeyRecord rec;
    rec.attempt = attempt;
    rec.seed = policy.seed;
    SplitMix64 rng = stream_rng(policy.seed, attempt);
    rec.s0 = sample_circulant_support(policy.p, policy.v, rng);
    rec.s1 = sample_circulant_support(policy.p, policy.v, rng);

    auto profiles = qc2_row_profiles(policy.p, rec.s0, rec.s1);
    if (max_col_intersection(profiles) >= policy.v) {
        // repeated column: delta = v, the bound can never certify
        rec.duplicate_columns = true;
        rec.numerator = binomial(n, policy.t);
        rec.denominator = rec.numerator;
        rec.log2_bound = 0.0;
        rec.accepted = false;
        return rec;
    }

    BoundReport rep;
    if (policy.fixed_b) {
        rec.b = *policy.fixed_b;
        rep = dfr_bound(profiles, n, policy.t, rec.b);
    } else {
        auto [b, r] = optimize_threshold(profiles, n, policy.v, policy.t);
        rec.b = b;
        rep = std::move(r);
    }
    rec.numerator = rep.numerator;
    rec.denominator = rep.denominator;
    rec.log2_bound = rep.log2_bound;
    // bound < 2^target  <=>  numerator * 2^-target < C(n, t), exactly
    BigInt scaled = rec.numerator << (uint32_t)(-policy.target_log2_dfr);
    rec.accepted = scaled < rec.denominator;
    return rec;
}

namespace {

// evaluate attempts [base, base + count) across workers, in attempt order
std::vector<KeyRecord> certify_wave(const KeygenPolicy& policy, uint64_t base, uint64_t count) {
    unsigned workers = policy.workers ? policy.workers : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = (unsigned)std::min<uint64_t>(workers, count);

    std::vector<KeyRecord> records((size_t)count);
    std::vector<std::thread> pool;
    for (unsigned wkr = 0; wkr < workers; ++wkr) {
        pool.emplace_back([&, wkr] {
            for (uint64_t k = wkr; k < count; k += workers)
                records[(size_t)k] = certify_key(policy, base + k);
        });
    }
    for (auto& th : pool) th.join();
    return records;
}

} // namespace

std::optional<KeyRecord> rejection_sample_key(const KeygenPolicy& policy) {
    validate_policy(policy);
    unsigned workers = policy.workers ? policy.workers : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;

    uint64_t base = 0;
    while (base < policy.max_attempts) {
        uint64_t count = std::min<uint64_t>(workers, policy.max_attempts - base);
        auto wave = certify_wave(policy, base, count);
        for (auto& rec : wave)
            if (rec.accepted) return std::move(rec); // lowest attempt index wins
        base += count;
    }
    return std::nullopt;
}

AcceptanceExperiment acceptance_rate_experiment(const KeygenPolicy& policy, uint64_t n_keys) {
    validate_policy(policy);
    AcceptanceExperiment exp;
    exp.keys_tested = n_keys;
    exp.records = certify_wave(policy, 0, n_keys);
    for (const auto& rec : exp.records)
        if (rec.accepted) ++exp.accepted;
    return exp;
}

}
