#include "bfcert/bf_decoder.hpp"

#include <algorithm>

#include "bfcert/errors.hpp"

namespace bfcert {

void validate_config(const ParityCheckMatrix& H, const BfConfig& cfg) {
    if (cfg.max_iterations < 1) throw ConfigError("bf config: max_iterations must be >= 1");
    if (cfg.thresholds.size() != 1 && cfg.thresholds.size() != H.n)
        throw ConfigError("bf config: thresholds must be scalar or one per bit");
    for (uint32_t i = 0; i < H.n; ++i) {
        uint32_t b = cfg.threshold_for(i);
        if (b < 1 || b > H.col_weight(i))
            throw ConfigError("bf config: threshold for bit " + std::to_string(i) +
                              " outside [1, v_i]");
    }
}

std::vector<uint32_t> unsatisfied_counts(const ParityCheckMatrix& H, const BitVec& s) {
    if (s.size() != H.r) throw DimensionError("unsatisfied_counts: syndrome length != r");
    std::vector<uint32_t> sigma(H.n, 0);
    for (uint32_t i = 0; i < H.n; ++i) {
        uint32_t c = 0;
        for (uint32_t row : H.col_supports[i]) c += s[row] & 1u;
        sigma[i] = c;
    }
    return sigma;
}

DecodeOutcome bf_decode(const ParityCheckMatrix& H, const BitVec& s_in, const BfConfig& cfg) {
    validate_config(H, cfg);
    if (s_in.size() != H.r) throw DimensionError("bf_decode: syndrome length != r");

    BitVec s = s_in;
    DecodeOutcome out;
    out.e_prime.assign(H.n, 0);

    for (uint32_t iter = 0; iter < cfg.max_iterations; ++iter) {
        auto sigma = unsatisfied_counts(H, s);
        std::vector<uint32_t> flips;
        for (uint32_t i = 0; i < H.n; ++i)
            if (sigma[i] >= cfg.threshold_for(i)) flips.push_back(i);
        for (uint32_t i : flips) {
            out.e_prime[i] ^= 1;
            for (uint32_t row : H.col_supports[i]) s[row] ^= 1; // incremental update
        }
        out.counters = std::move(sigma);
        out.iterations_run = iter + 1;
        if (std::all_of(s.begin(), s.end(), [](uint8_t b) { return b == 0; })) break;
    }
    out.syndrome_zero = std::all_of(s.begin(), s.end(), [](uint8_t b) { return b == 0; });
    return out;
}

BitVec decision_flags(const BitVec& e, const BitVec& e_prime) {
    if (e.size() != e_prime.size()) throw DimensionError("decision_flags: length mismatch");
    BitVec f(e.size());
    for (size_t i = 0; i < e.size(); ++i) f[i] = (e[i] ^ e_prime[i]) & 1u;
    return f;
}

SingleIterationDecoder::SingleIterationDecoder(const ParityCheckMatrix& H, const BfConfig& cfg)
    : H_(H), cfg_(cfg) {
    validate_config(H, cfg);
    synd_words_.assign((H.r + 63) / 64, 0);
    sigma_.assign(H.n, 0);
    in_error_.assign(H.n, 0);
}

bool SingleIterationDecoder::decodes_exactly(std::span<const uint32_t> error_support) {
    for (uint32_t i : error_support) {
        in_error_[i] = 1;
        for (uint32_t row : H_.col_supports[i]) {
            synd_words_[row >> 6] ^= 1ull << (row & 63);
            touched_rows_.push_back(row);
        }
    }
    // scatter sigma over unsatisfied checks only; clearing the bit as we go
    // both dedupes the touched-row list and restores the syndrome buffer
    for (uint32_t row : touched_rows_) {
        if (!((synd_words_[row >> 6] >> (row & 63)) & 1)) continue;
        synd_words_[row >> 6] ^= 1ull << (row & 63);
        for (uint32_t c : H_.row_supports[row]) {
            if (sigma_[c]++ == 0) touched_cols_.push_back(c);
        }
    }
    touched_rows_.clear();

    bool exact = true;
    for (uint32_t i : error_support)
        if (sigma_[i] < cfg_.threshold_for(i)) {
            exact = false;
            break;
        }
    if (exact)
        for (uint32_t c : touched_cols_)
            if (!in_error_[c] && sigma_[c] >= cfg_.threshold_for(c)) {
                exact = false;
                break;
            }

    for (uint32_t c : touched_cols_) sigma_[c] = 0;
    touched_cols_.clear();
    for (uint32_t i : error_support) in_error_[i] = 0;
    return exact;
}

}
