#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "bfcert/bigint.hpp"

namespace bfcert {

/// Run-length histogram of a nonnegative integer vector: (value, multiplicity)
/// levels in ascending value order, zeros stored as an ordinary level when present.
struct CompressedVector {
    uint64_t length = 0;                              // l
    std::vector<std::pair<int64_t, uint64_t>> levels; // multiplicities sum to length

    uint64_t distinct_values() const { return levels.size(); } // omega
};

CompressedVector compress(std::span<const int64_t> values);

/// Loop-effort instrumentation for count_exceeding; one tick per tested
/// value combination / multiplicity assignment.
struct CountStats {
    uint64_t configurations = 0;
};

/// Number of size-m index subsets of the underlying vector whose entry sum
/// strictly exceeds alpha. Exact. Counts the complement (sum <= alpha) over
/// distinct-value combinations with bounded multiplicities, so cost scales
/// with the number of distinct values, not with C(l, m).
BigInt count_exceeding(const CompressedVector& cv, uint64_t m, int64_t alpha,
                       CountStats* stats = nullptr);

/// Literal enumeration oracle. Refuses l > 25.
BigInt count_exceeding_bruteforce(std::span<const int64_t> values, uint64_t m, int64_t alpha);

/// Closed form for a binary vector of weight m: number of size-x subsets whose
/// sum exceeds alpha, i.e. sum_{j=alpha+1}^{min(m,x)} C(m,j) C(l-m, x-j).
BigInt theta(uint64_t l, uint64_t x, uint64_t m, int64_t alpha);

}
