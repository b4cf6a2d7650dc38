#pragma once

#include <gmpxx.h>

#include <cstdint>

namespace bfcert {

// Counts routinely exceed machine words (C(n,t) at n ~ 5.6e5, t ~ 100 is ~1200 bits),
// so everything that counts subsets is exact big-integer arithmetic; floating point
// appears only at the presentation boundary (log2 of a ratio).
using BigInt = mpz_class;

/// C(n, k), exact. Rows are grown multiplicatively and memoized per thread, so
/// repeated queries against the same n are lookups. Returns 0 for k > n.
const BigInt& binomial(uint64_t n, uint64_t k);

/// log2 of a positive integer, accurate to double precision.
double log2_big(const BigInt& x);

/// log2(num / den) for den > 0; -infinity when num == 0.
double log2_ratio(const BigInt& num, const BigInt& den);

}
