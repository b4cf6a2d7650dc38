#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bfcert {

using Support = std::vector<uint32_t>; // sorted ascending
using BitVec = std::vector<uint8_t>;   // one entry per position, values 0/1

enum class CodeStructure { Explicit, QC2, Monomial };

/// Sparse binary parity-check matrix, stored in both orientations as sorted
/// index lists. Immutable after construction; safe to share across threads.
struct ParityCheckMatrix {
    uint32_t n = 0; // columns (block length)
    uint32_t r = 0; // rows
    std::vector<Support> col_supports;
    std::vector<Support> row_supports;

    CodeStructure structure = CodeStructure::Explicit;
    uint32_t p = 0; // circulant block size (QC2, Monomial)
    uint32_t v = 0; // column weight (QC2, Monomial)
    uint32_t w = 0; // row weight (Monomial; 2v for QC2)
    std::vector<std::vector<uint32_t>> shifts; // Monomial only, v x w

    uint32_t col_weight(uint32_t i) const { return (uint32_t)col_supports[i].size(); }
    uint32_t row_weight(uint32_t j) const { return (uint32_t)row_supports[j].size(); }
    uint32_t min_col_weight() const;
    uint32_t max_row_weight() const;

    // rank is never computed; the design rate 1 - r/n is what gets reported
    double design_rate() const { return 1.0 - (double)r / (double)n; }

    uint64_t fingerprint() const; // FNV-1a over dimensions and supports
};

/// H = [H0 | H1], two weight-v circulants of size p described by their first
/// column supports. (v, 2v)-regular, r = p, n = 2p.
ParityCheckMatrix build_qc2(uint32_t p, const Support& s0, const Support& s1);

/// Monomial code: v x w grid of p x p identity blocks, block (j,k) cyclically
/// shifted down by shifts[j][k]. (v, w)-regular, r = vp, n = wp.
ParityCheckMatrix build_monomial(uint32_t p, const std::vector<std::vector<uint32_t>>& shifts);

/// Arbitrary matrix from per-row column supports. Duplicate columns are legal
/// but flagged on stderr (they force delta = v and kill the correction radius).
ParityCheckMatrix build_explicit(uint32_t n, const std::vector<Support>& row_supports);

/// Multiplication-table shift grid shifts[j][k] = j*k mod p. For prime p >= w
/// every pair of shift columns differs in all v rows, so the resulting monomial
/// code has no 4-cycles (girth 6 for v, w >= 3).
std::vector<std::vector<uint32_t>> array_monomial_shifts(uint32_t p, uint32_t v, uint32_t w);

/// s = e H^T over GF(2).
BitVec syndrome(const ParityCheckMatrix& H, const BitVec& e);

struct GirthResult {
    int value = 0;
    bool exact = false; // false: no cycle of length <= cutoff, girth >= value
};

/// Tanner-graph girth by truncated BFS from one variable node per circulant
/// block-column (every column for Explicit). Exact if <= cutoff, else the
/// sentinel cutoff+2. cutoff in {4, 6, 8, 10, 12}.
GirthResult girth(const ParityCheckMatrix& H, int cutoff = 8);

/// One row of the adjacency matrix Gamma (pairwise column-support overlaps),
/// diagonal excluded, compressed to nonzero (value, multiplicity) pairs.
struct GammaRow {
    uint32_t owner_col = 0;
    uint64_t length = 0;                                // n - 1
    std::vector<std::pair<uint32_t, uint64_t>> entries; // ascending by value, values >= 1

    uint64_t zero_multiplicity() const {
        uint64_t nz = 0;
        for (const auto& [val, mult] : entries) nz += mult;
        return length - nz;
    }
    uint32_t max_value() const { return entries.empty() ? 0 : entries.back().first; }
};

/// Overlap row of column i, computed by scattering over the rows of S(h_i)
/// (cost O(v_i * w_max), never O(n)).
GammaRow adjacency_row(const ParityCheckMatrix& H, uint32_t i);

struct RowProfile {
    GammaRow row;
    uint64_t multiplicity = 1;
    uint32_t col_weight = 0;
};

/// One representative Gamma row per circulant block-column (multiplicity p),
/// or all n rows for Explicit. Sums over columns become sums over profiles
/// weighted by multiplicity.
std::vector<RowProfile> distinct_row_profiles(const ParityCheckMatrix& H);

/// All n rows, multiplicity 1 — the structure-oblivious path.
std::vector<RowProfile> per_column_profiles(const ParityCheckMatrix& H);

/// The two QC2 profiles straight from the circulant supports, via difference
/// histograms; never materializes the matrix. O(v^2 + p).
std::vector<RowProfile> qc2_row_profiles(uint32_t p, const Support& s0, const Support& s1);

/// Randomized incremental search for a girth-6 QC2 pair: supports are grown
/// element by element, each candidate checked against the used difference sets,
/// restarting on dead ends. Needs p comfortably above ~v^2/2 to succeed.
std::optional<std::pair<Support, Support>> search_girth6_qc2(uint32_t p, uint32_t v,
                                                             uint64_t seed,
                                                             uint32_t max_restarts = 20000);

/// Parse a code spec JSON document:
///   {"type":"qc2","p":..,"supports":[[..],[..]]}
///   {"type":"monomial","p":..,"shifts":[[..],..]}
///   {"type":"explicit","rows":[[..],..],"n":..}   (n optional)
ParityCheckMatrix parse_code_spec(const std::string& json_text);

/// Normalized spec document for H (inverse of parse_code_spec).
std::string code_spec_json(const ParityCheckMatrix& H);

/// Read a spec from a file path.
ParityCheckMatrix load_code_spec_file(const std::string& path);

}
