#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "bfcert/code_model.hpp"
#include "bfcert/rng.hpp"

namespace bfcert::test {

// O(n^2) pairwise-intersection adjacency matrix, diagonal zero
inline std::vector<std::vector<uint32_t>> dense_gamma(const ParityCheckMatrix& H) {
    std::vector<std::vector<uint32_t>> g(H.n, std::vector<uint32_t>(H.n, 0));
    for (uint32_t i = 0; i < H.n; ++i)
        for (uint32_t j = i + 1; j < H.n; ++j) {
            uint32_t overlap = 0;
            const auto &a = H.col_supports[i], &b = H.col_supports[j];
            size_t x = 0, y = 0;
            while (x < a.size() && y < b.size()) {
                if (a[x] == b[y]) ++overlap, ++x, ++y;
                else if (a[x] < b[y]) ++x;
                else ++y;
            }
            g[i][j] = g[j][i] = overlap;
        }
    return g;
}

// dense GF(2) H * e^T
inline BitVec dense_syndrome(const ParityCheckMatrix& H, const BitVec& e) {
    BitVec s(H.r, 0);
    for (uint32_t j = 0; j < H.r; ++j) {
        uint32_t acc = 0;
        for (uint32_t c = 0; c < H.n; ++c) {
            bool h = std::binary_search(H.row_supports[j].begin(), H.row_supports[j].end(), c);
            acc ^= (h && e[c]) ? 1u : 0u;
        }
        s[j] = (uint8_t)acc;
    }
    return s;
}

// random matrix with column weight wc, retried until every row is nonempty
inline ParityCheckMatrix random_explicit(uint32_t n, uint32_t r, uint32_t wc, SplitMix64& rng) {
    for (int tries = 0; tries < 1000; ++tries) {
        std::vector<Support> rows(r);
        for (uint32_t i = 0; i < n; ++i)
            for (uint32_t rowidx : sample_index_subset(r, wc, rng)) rows[rowidx].push_back(i);
        bool ok = true;
        for (const auto& rowv : rows)
            if (rowv.empty()) ok = false;
        if (!ok) continue;
        return build_explicit(n, rows);
    }
    throw std::runtime_error("random_explicit: could not fill all rows");
}

inline BitVec support_to_bits(uint32_t n, const Support& sup) {
    BitVec e(n, 0);
    for (uint32_t i : sup) e[i] = 1;
    return e;
}

}
