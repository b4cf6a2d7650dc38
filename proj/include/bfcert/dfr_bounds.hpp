#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bfcert/bigint.hpp"
#include "bfcert/code_model.hpp"
#include "bfcert/subset_count.hpp"

namespace bfcert {

/// Maximum column union of order z: the largest sum of the z biggest entries
/// of any (punctured) Gamma row. mu(H, 0) = 0.
uint64_t mu_z(const std::vector<RowProfile>& profiles, uint64_t z);

/// delta = mu(H, 1): largest pairwise column overlap.
uint32_t max_col_intersection(const std::vector<RowProfile>& profiles);
uint32_t max_col_intersection(const ParityCheckMatrix& H);

/// delta(H, z): max over columns i and z-sets M of other columns of the weight
/// of XOR_{j in M} h_j restricted to the rows of column i. Exhaustive; refuses
/// n > 64, column weight > 64 or z > 4.
uint32_t delta_z(const ParityCheckMatrix& H, uint32_t z);

/// floor(v* / (2 delta)); with delta = 0 every radius is guaranteed and the
/// result is reported capped at n.
uint64_t t_majority(uint32_t v_star, uint32_t delta, uint32_t n, bool* capped = nullptr);

struct CapabilityReport {
    uint32_t v_star = 0;
    uint32_t delta = 0;
    uint64_t t_majority = 0;
    bool t_majority_capped = false;
    uint64_t t_mu = 0;           // largest t with v* > mu(t) + mu(t-1)
    std::vector<uint64_t> mu;    // mu[z] for z in [0, t_mu + 1]
    // usable fixed-threshold interval [mu(t)+1, v* - mu(t-1)] for t = 1..t_mu
    std::vector<std::pair<uint32_t, uint32_t>> threshold_ranges;
};

CapabilityReport analyze_capability(const std::vector<RowProfile>& profiles, uint32_t v_star,
                                    uint32_t n);

/// Guaranteed weights of the closed-form benchmark for g in {4, 6, 8, 10}:
/// 0, ceil((v+2)/4)-1, ceil(v/2)-1, ceil((v^2+4)/8)-1.
uint64_t chilappagari_bound(uint32_t v, uint32_t g);

enum class BoundMethod { Th4, Th4bis, Th5, QC };

const char* bound_method_name(BoundMethod m);

/// One certified failure-rate bound: exact integer numerator against C(n, t),
/// log2 presentation capped at 0 (the bound itself is min{1, num/den}).
struct BoundReport {
    uint64_t t = 0;
    std::vector<uint32_t> thresholds; // one entry per profile, or a single scalar
    BigInt numerator;                 // unclamped
    BigInt denominator;               // C(n, t)
    double log2_bound = 0;
    BoundMethod method = BoundMethod::Th4;

    bool zero() const { return numerator == 0; }
    bool clamped() const { return numerator >= denominator; }
    /// min{1, num/den} as a double
    double value() const;
};

/// Generic per-bit bound: for every column class, subsets of its Gamma row that
/// can starve a set bit (sum > v_i - b_i over t-1 picks) or trip a clear bit
/// (sum > b_i - 1 over t picks), weighted by class multiplicity.
BoundReport dfr_bound(const std::vector<RowProfile>& profiles, uint32_t n, uint64_t t,
                      std::span<const uint32_t> b_per_profile, unsigned workers = 1);
BoundReport dfr_bound(const std::vector<RowProfile>& profiles, uint32_t n, uint64_t t, uint32_t b,
                      unsigned workers = 1);

/// Regular code, odd v, b = ceil(v/2): single-term numerator over the full
/// Gamma rows (diagonal zero included). Equals the generic bound at that
/// threshold exactly.
BoundReport dfr_bound_regular_odd(const std::vector<RowProfile>& profiles, uint32_t n, uint32_t v,
                                  uint64_t t);

/// (v, w)-regular with girth >= 6, odd v, b = ceil(v/2): closed form
/// min{1, n * theta(n, t, v(w-1), (v-1)/2) / C(n, t)}.
BoundReport dfr_bound_girth6_regular(uint32_t n, uint32_t v, uint32_t w, uint64_t t);

/// QC2 fast path: the two distinct Gamma rows stand in for all n columns,
/// min{1, p * N_tot / C(n, t)}.
BoundReport dfr_bound_qc(const ParityCheckMatrix& H, uint64_t t, uint32_t b);

/// Failure bound over a BSC(rho): binomially weighted sum of per-weight bounds,
/// truncated where the weight distribution mass drops below 2^-128; the
/// neglected tail is added back so the result stays an upper bound.
double bsc_failure_bound(const ParityCheckMatrix& H, double rho, uint32_t b);

/// Full scan of b in [1, v] minimizing the generic numerator; ties go to the
/// smaller b. Gamma rows are compressed once and reused across the sweep.
std::pair<uint32_t, BoundReport> optimize_threshold(const std::vector<RowProfile>& profiles,
                                                    uint32_t n, uint32_t v, uint64_t t);

}
