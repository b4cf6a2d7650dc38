#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bfcert/code_model.hpp"

namespace bfcert {

/// Per-bit flip thresholds plus an iteration cap. The certified regime is
/// max_iterations = 1; anything beyond that is exploratory.
struct BfConfig {
    std::vector<uint32_t> thresholds; // size 1 (uniform) or n (per bit)
    uint32_t max_iterations = 1;

    static BfConfig uniform(uint32_t b, uint32_t max_iterations = 1) {
        return BfConfig{{b}, max_iterations};
    }
    uint32_t threshold_for(uint32_t i) const {
        return thresholds.size() == 1 ? thresholds[0] : thresholds[i];
    }
};

/// Throws ConfigError unless 1 <= b_i <= v_i for every bit and max_iterations >= 1.
void validate_config(const ParityCheckMatrix& H, const BfConfig& cfg);

struct DecodeOutcome {
    BitVec e_prime;
    std::vector<uint32_t> counters; // sigma of the last iteration run
    uint32_t iterations_run = 0;
    bool syndrome_zero = false;
};

/// sigma_i = number of unsatisfied parity checks involving bit i.
std::vector<uint32_t> unsatisfied_counts(const ParityCheckMatrix& H, const BitVec& s);

/// Parallel bit flipping: flips every bit with sigma_i >= b_i (ties flip).
/// One pass with max_iterations = 1; otherwise repeats with incremental
/// syndrome updates until the syndrome clears or the cap is hit.
DecodeOutcome bf_decode(const ParityCheckMatrix& H, const BitVec& s, const BfConfig& cfg);

/// f_i = 1 where the decoder decision on bit i was wrong; for one iteration
/// that is exactly the residual error e XOR e'.
BitVec decision_flags(const BitVec& e, const BitVec& e_prime);

/// Single-iteration decode specialized for tight loops: owns all scratch,
/// touches only the O(t*v + wt(s)*w) positions involved, and answers just
/// "did the flip set reproduce the error exactly". One instance per worker.
class SingleIterationDecoder {
  public:
    SingleIterationDecoder(const ParityCheckMatrix& H, const BfConfig& cfg);

    /// error_support holds distinct positions, any order.
    bool decodes_exactly(std::span<const uint32_t> error_support);

  private:
    const ParityCheckMatrix& H_;
    BfConfig cfg_;
    std::vector<uint64_t> synd_words_;
    std::vector<uint32_t> sigma_;
    std::vector<uint8_t> in_error_;
    std::vector<uint32_t> touched_rows_;
    std::vector<uint32_t> touched_cols_;
};

}
