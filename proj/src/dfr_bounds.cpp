#include "bfcert/dfr_bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "bfcert/errors.hpp"

namespace bfcert {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

CompressedVector punctured_cv(const GammaRow& g) {
    CompressedVector cv;
    cv.length = g.length;
    uint64_t zeros = g.zero_multiplicity();
    if (zeros) cv.levels.emplace_back(0, zeros);
    for (const auto& [val, mult] : g.entries) cv.levels.emplace_back((int64_t)val, mult);
    return cv;
}

CompressedVector full_cv(const GammaRow& g) {
    // full row gamma^(i): the punctured row plus the diagonal zero
    CompressedVector cv = punctured_cv(g);
    cv.length += 1;
    if (!cv.levels.empty() && cv.levels.front().first == 0)
        cv.levels.front().second += 1;
    else
        cv.levels.insert(cv.levels.begin(), {0, 1});
    return cv;
}

BigInt count_or_zero(const CompressedVector& cv, uint64_t m, int64_t alpha) {
    if (m > cv.length) return 0; // there are no such subsets at all
    return count_exceeding(cv, m, alpha);
}

void finish_report(BoundReport& rep) {
    if (rep.numerator == 0)
        rep.log2_bound = kNegInf;
    else
        rep.log2_bound = std::min(0.0, log2_ratio(rep.numerator, rep.denominator));
}

} // namespace

uint64_t mu_z(const std::vector<RowProfile>& profiles, uint64_t z) {
    uint64_t best = 0;
    for (const auto& pr : profiles) {
        uint64_t remaining = z, sum = 0;
        for (auto it = pr.row.entries.rbegin(); it != pr.row.entries.rend() && remaining; ++it) {
            uint64_t take = std::min(remaining, it->second);
            sum += take * it->first;
            remaining -= take;
        }
        best = std::max(best, sum);
    }
    return best;
}

uint32_t max_col_intersection(const std::vector<RowProfile>& profiles) {
    uint32_t best = 0;
    for (const auto& pr : profiles) best = std::max(best, pr.row.max_value());
    return best;
}

uint32_t max_col_intersection(const ParityCheckMatrix& H) {
    return max_col_intersection(distinct_row_profiles(H));
}

uint32_t delta_z(const ParityCheckMatrix& H, uint32_t z) {
    if (H.n > 64 || z > 4)
        throw GuardError("delta_z: exhaustive search limited to n <= 64, z <= 4");
    if (z == 0) return 0;

    uint32_t best = 0;
    std::vector<uint64_t> masks(H.n);
    std::vector<int> rowpos(H.r);
    for (uint32_t i = 0; i < H.n; ++i) {
        const Support& rows = H.col_supports[i];
        if (rows.size() > 64) throw GuardError("delta_z: column weight > 64");
        std::fill(rowpos.begin(), rowpos.end(), -1);
        for (size_t k = 0; k < rows.size(); ++k) rowpos[rows[k]] = (int)k;
        // columns restricted to the rows of column i, as bitmasks
        uint32_t ncand = 0;
        for (uint32_t j = 0; j < H.n; ++j) {
            if (j == i) continue;
            uint64_t m = 0;
            for (uint32_t rowidx : H.col_supports[j])
                if (rowpos[rowidx] >= 0) m |= 1ull << rowpos[rowidx];
            masks[ncand++] = m;
        }
        // max XOR weight over z-subsets
        std::vector<uint32_t> pick(z);
        auto rec = [&](auto&& self, uint32_t depth, uint32_t from, uint64_t acc) -> void {
            if (depth == z) {
                best = std::max<uint32_t>(best, (uint32_t)std::popcount(acc));
                return;
            }
            for (uint32_t c = from; c + (z - depth) <= ncand; ++c)
                self(self, depth + 1, c + 1, acc ^ masks[c]);
        };
        rec(rec, 0, 0, 0);
    }
    return best;
}

uint64_t t_majority(uint32_t v_star, uint32_t delta, uint32_t n, bool* capped) {
    if (capped) *capped = false;
    if (delta == 0) {
        // disjoint columns: every sigma discriminates perfectly
        if (capped) *capped = true;
        return n;
    }
    return v_star / (2ull * delta);
}

CapabilityReport analyze_capability(const std::vector<RowProfile>& profiles, uint32_t v_star,
                                    uint32_t n) {
    CapabilityReport rep;
    rep.v_star = v_star;
    rep.delta = max_col_intersection(profiles);
    rep.t_majority = t_majority(v_star, rep.delta, n, &rep.t_majority_capped);

    uint64_t t = 0;
    std::vector<uint64_t> mu{0}; // mu(0) = 0
    while (t < n) {
        uint64_t mu_next = mu_z(profiles, t + 1);
        if (!(v_star > mu_next + mu.back())) break;
        mu.push_back(mu_next);
        ++t;
    }
    rep.t_mu = t;
    mu.push_back(mu_z(profiles, t + 1));
    rep.mu = std::move(mu);
    for (uint64_t i = 1; i <= rep.t_mu; ++i)
        rep.threshold_ranges.emplace_back((uint32_t)(rep.mu[i] + 1),
                                          (uint32_t)(v_star - rep.mu[i - 1]));
    return rep;
}

uint64_t chilappagari_bound(uint32_t v, uint32_t g) {
    switch (g) {
        case 4:
            return 0;
        case 6:
            return (v + 2 + 3) / 4 - 1; // ceil((v+2)/4) - 1
        case 8:
            return (v + 1) / 2 - 1; // ceil(v/2) - 1
        case 10:
            return ((uint64_t)v * v + 4 + 7) / 8 - 1; // ceil((v^2+4)/8) - 1
        default:
            throw DomainError("chilappagari_bound: supported girths are {4, 6, 8, 10}");
    }
}

const char* bound_method_name(BoundMethod m) {
    switch (m) {
        case BoundMethod::Th4: return "th4";
        case BoundMethod::Th4bis: return "th4bis";
        case BoundMethod::Th5: return "th5";
        case BoundMethod::QC: return "qc";
    }
    return "?";
}

double BoundReport::value() const {
    if (numerator == 0) return 0.0;
    if (clamped()) return 1.0;
    return std::exp2(log2_bound);
}

BoundReport dfr_bound(const std::vector<RowProfile>& profiles, uint32_t n, uint64_t t,
                      std::span<const uint32_t> b_per_profile, unsigned workers) {
    if (t > n) throw DomainError("dfr_bound: t > n");
    if (b_per_profile.size() != 1 && b_per_profile.size() != profiles.size())
        throw ConfigError("dfr_bound: need one threshold or one per profile");
    auto b_of = [&](size_t k) {
        return b_per_profile.size() == 1 ? b_per_profile[0] : b_per_profile[k];
    };
    for (size_t k = 0; k < profiles.size(); ++k)
        if (b_of(k) < 1 || b_of(k) > profiles[k].col_weight)
            throw ConfigError("dfr_bound: threshold outside [1, v_i]");

    BoundReport rep;
    rep.t = t;
    rep.thresholds.assign(b_per_profile.begin(), b_per_profile.end());
    rep.denominator = binomial(n, t);
    rep.method = BoundMethod::Th4;
    rep.numerator = 0;
    if (t == 0) { // weight-0 errors always decode: empty flip set
        finish_report(rep);
        return rep;
    }

    auto term_range = [&](size_t lo, size_t hi) {
        BigInt acc = 0;
        for (size_t k = lo; k < hi; ++k) {
            const auto& pr = profiles[k];
            CompressedVector cv = punctured_cv(pr.row);
            const uint32_t b = b_of(k);
            BigInt term = count_or_zero(cv, t - 1, (int64_t)pr.col_weight - b) +
                          count_or_zero(cv, t, (int64_t)b - 1);
            acc += BigInt((unsigned long)pr.multiplicity) * term;
        }
        return acc;
    };

    if (workers <= 1 || profiles.size() < 2 * workers) {
        rep.numerator = term_range(0, profiles.size());
    } else {
        std::vector<BigInt> partial(workers);
        std::vector<std::thread> pool;
        const size_t per = (profiles.size() + workers - 1) / workers;
        for (unsigned wkr = 0; wkr < workers; ++wkr) {
            size_t lo = wkr * per, hi = std::min(profiles.size(), lo + per);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi, wkr] { partial[wkr] = term_range(lo, hi); });
        }
        for (auto& th : pool) th.join();
        for (const auto& x : partial) rep.numerator += x;
    }
    finish_report(rep);
    return rep;
}

BoundReport dfr_bound(const std::vector<RowProfile>& profiles, uint32_t n, uint64_t t, uint32_t b,
                      unsigned workers) {
    uint32_t bs[1] = {b};
    return dfr_bound(profiles, n, t, std::span<const uint32_t>(bs, 1), workers);
}

BoundReport dfr_bound_regular_odd(const std::vector<RowProfile>& profiles, uint32_t n, uint32_t v,
                                  uint64_t t) {
    if (v % 2 == 0) throw ConfigError("dfr_bound_regular_odd: v must be odd");
    for (const auto& pr : profiles)
        if (pr.col_weight != v)
            throw ConfigError("dfr_bound_regular_odd: code is not v-regular");
    if (t > n) throw DomainError("dfr_bound_regular_odd: t > n");

    BoundReport rep;
    rep.t = t;
    rep.thresholds = {(v + 1) / 2};
    rep.denominator = binomial(n, t);
    rep.method = BoundMethod::Th4bis;
    rep.numerator = 0;
    const int64_t alpha = (v - 1) / 2;
    for (const auto& pr : profiles) {
        CompressedVector cv = full_cv(pr.row);
        rep.numerator += BigInt((unsigned long)pr.multiplicity) * count_or_zero(cv, t, alpha);
    }
    finish_report(rep);
    return rep;
}

BoundReport dfr_bound_girth6_regular(uint32_t n, uint32_t v, uint32_t w, uint64_t t) {
    if (v % 2 == 0) throw ConfigError("dfr_bound_girth6_regular: v must be odd");
    if (w < 1 || (uint64_t)v * (w - 1) > n)
        throw ConfigError("dfr_bound_girth6_regular: inconsistent (n, v, w)");
    if (t > n) throw DomainError("dfr_bound_girth6_regular: t > n");

    BoundReport rep;
    rep.t = t;
    rep.thresholds = {(v + 1) / 2};
    rep.denominator = binomial(n, t);
    rep.method = BoundMethod::Th5;
    rep.numerator = BigInt(n) * theta(n, t, (uint64_t)v * (w - 1), (v - 1) / 2);
    finish_report(rep);
    return rep;
}

BoundReport dfr_bound_qc(const ParityCheckMatrix& H, uint64_t t, uint32_t b) {
    if (H.structure != CodeStructure::QC2)
        throw ConfigError("dfr_bound_qc: QC2 structure required");
    if (b < 1 || b > H.v) throw ConfigError("dfr_bound_qc: threshold outside [1, v]");
    if (t > H.n) throw DomainError("dfr_bound_qc: t > n");

    BoundReport rep;
    rep.t = t;
    rep.thresholds = {b};
    rep.denominator = binomial(H.n, t);
    rep.method = BoundMethod::QC;
    rep.numerator = 0;
    if (t > 0) {
        BigInt n_tot = 0;
        for (uint32_t rep_col : {0u, H.p}) {
            CompressedVector cv = punctured_cv(adjacency_row(H, rep_col));
            n_tot += count_or_zero(cv, t - 1, (int64_t)H.v - b);
            n_tot += count_or_zero(cv, t, (int64_t)b - 1);
        }
        rep.numerator = BigInt(H.p) * n_tot;
    }
    finish_report(rep);
    return rep;
}

double bsc_failure_bound(const ParityCheckMatrix& H, double rho, uint32_t b) {
    if (!(rho >= 0.0 && rho <= 1.0)) throw DomainError("bsc_failure_bound: rho outside [0, 1]");
    auto profiles = distinct_row_profiles(H);
    const uint32_t n = H.n;

    auto weight_bound = [&](uint64_t l) { return dfr_bound(profiles, n, l, b).value(); };

    if (rho == 0.0) return 0.0;
    if (rho == 1.0) return weight_bound(n);

    const double l2rho = std::log2(rho), l2q = std::log2(1.0 - rho);
    const double lgn = std::lgamma((double)n + 1.0);
    double included_mass = 0.0, acc = 0.0;
    for (uint64_t l = 0; l <= n; ++l) {
        double log2w = (lgn - std::lgamma((double)l + 1.0) - std::lgamma((double)(n - l) + 1.0)) /
                           std::numbers::ln2 +
                       (double)l * l2rho + (double)(n - l) * l2q;
        if (log2w < -160.0) continue; // folded into the tail below
        double wl = std::exp2(log2w);
        included_mass += wl;
        acc += weight_bound(l) * wl;
    }
    double tail = std::max(0.0, 1.0 - included_mass);
    return std::min(1.0, acc + tail);
}

std::pair<uint32_t, BoundReport> optimize_threshold(const std::vector<RowProfile>& profiles,
                                                    uint32_t n, uint32_t v, uint64_t t) {
    if (v < 1) throw ConfigError("optimize_threshold: v must be >= 1");
    for (const auto& pr : profiles)
        if (pr.col_weight != v) throw ConfigError("optimize_threshold: profiles not v-regular");
    if (t > n) throw DomainError("optimize_threshold: t > n");

    std::vector<CompressedVector> cvs;
    cvs.reserve(profiles.size());
    for (const auto& pr : profiles) cvs.push_back(punctured_cv(pr.row));

    uint32_t best_b = 1;
    BigInt best_num;
    bool have = false;
    for (uint32_t b = 1; b <= v; ++b) {
        BigInt num = 0;
        if (t > 0)
            for (size_t k = 0; k < profiles.size(); ++k) {
                BigInt term = count_or_zero(cvs[k], t - 1, (int64_t)v - b) +
                              count_or_zero(cvs[k], t, (int64_t)b - 1);
                num += BigInt((unsigned long)profiles[k].multiplicity) * term;
            }
        if (!have || num < best_num) { // strict: ties keep the smaller b
            have = true;
            best_num = num;
            best_b = b;
        }
    }

    BoundReport rep;
    rep.t = t;
    rep.thresholds = {best_b};
    rep.numerator = best_num;
    rep.denominator = binomial(n, t);
    rep.method = BoundMethod::Th4;
    finish_report(rep);
    return {best_b, std::move(rep)};
}

}
