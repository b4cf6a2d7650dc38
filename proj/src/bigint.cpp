#include "bfcert/bigint.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <unordered_map>

namespace bfcert {

const BigInt& binomial(uint64_t n, uint64_t k) {
    static const BigInt zero{0};
    if (k > n) return zero;
    k = std::min(k, n - k);
    // deque keeps references stable while a row grows
    thread_local std::unordered_map<uint64_t, std::deque<BigInt>> rows;
    auto& row = rows[n];
    if (row.empty()) row.emplace_back(1);
    while (row.size() <= k) {
        auto i = (unsigned long)row.size();
        BigInt next = row.back() * (unsigned long)(n - i + 1);
        mpz_divexact_ui(next.get_mpz_t(), next.get_mpz_t(), i);
        row.push_back(std::move(next));
    }
    return row[k];
}

double log2_big(const BigInt& x) {
    long exp = 0;
    double d = mpz_get_d_2exp(&exp, x.get_mpz_t());
    return std::log2(d) + (double)exp;
}

double log2_ratio(const BigInt& num, const BigInt& den) {
    if (num == 0) return -std::numeric_limits<double>::infinity();
    return log2_big(num) - log2_big(den);
}

}
