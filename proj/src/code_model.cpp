#include "bfcert/code_model.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "bfcert/errors.hpp"
#include "bfcert/rng.hpp"

namespace bfcert {

namespace {

Support sorted_support(const Support& s, uint32_t limit, const char* what) {
    if (s.empty()) throw SpecError(std::string(what) + ": empty support");
    Support out = s;
    std::sort(out.begin(), out.end());
    for (size_t i = 0; i < out.size(); ++i) {
        if (out[i] >= limit)
            throw SpecError(std::string(what) + ": entry " + std::to_string(out[i]) +
                            " out of range [0, " + std::to_string(limit) + ")");
        if (i && out[i] == out[i - 1])
            throw SpecError(std::string(what) + ": duplicate entry " + std::to_string(out[i]));
    }
    return out;
}

std::vector<Support> transpose_supports(const std::vector<Support>& rows, uint32_t n) {
    std::vector<Support> cols(n);
    for (uint32_t j = 0; j < rows.size(); ++j)
        for (uint32_t c : rows[j]) cols[c].push_back(j);
    return cols;
}

void warn_duplicate_columns(const ParityCheckMatrix& H) {
    std::unordered_set<uint64_t> seen;
    seen.reserve(H.n * 2);
    bool warned = false;
    for (uint32_t i = 0; i < H.n && !warned; ++i) {
        uint64_t h = 1469598103934665603ull;
        for (uint32_t rowidx : H.col_supports[i]) {
            h ^= rowidx;
            h *= 1099511628211ull;
        }
        if (!seen.insert(h).second) {
            // hash collision is possible but this is only a diagnostic
            std::cerr << "bf-cert: warning: matrix contains duplicate columns "
                         "(delta = v, no correction guarantee)\n";
            warned = true;
        }
    }
}

} // namespace

uint32_t ParityCheckMatrix::min_col_weight() const {
    uint32_t m = UINT32_MAX;
    for (const auto& c : col_supports) m = std::min<uint32_t>(m, (uint32_t)c.size());
    return m;
}

uint32_t ParityCheckMatrix::max_row_weight() const {
    uint32_t m = 0;
    for (const auto& row : row_supports) m = std::max<uint32_t>(m, (uint32_t)row.size());
    return m;
}

uint64_t ParityCheckMatrix::fingerprint() const {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&h](uint64_t x) {
        h ^= x;
        h *= 1099511628211ull;
    };
    mix(n);
    mix(r);
    for (const auto& col : col_supports) {
        mix(col.size());
        for (uint32_t rowidx : col) mix(rowidx);
    }
    return h;
}

ParityCheckMatrix build_qc2(uint32_t p, const Support& s0, const Support& s1) {
    if (p == 0) throw SpecError("build_qc2: p must be positive");
    Support a = sorted_support(s0, p, "build_qc2: S0");
    Support b = sorted_support(s1, p, "build_qc2: S1");
    if (a.size() != b.size()) throw SpecError("build_qc2: |S0| != |S1|");

    ParityCheckMatrix H;
    H.structure = CodeStructure::QC2;
    H.p = p;
    H.v = (uint32_t)a.size();
    H.w = 2 * H.v;
    H.n = 2 * p;
    H.r = p;
    H.col_supports.resize(H.n);
    H.row_supports.resize(H.r);

    const Support* blocks[2] = {&a, &b};
    for (uint32_t blk = 0; blk < 2; ++blk) {
        const Support& s = *blocks[blk];
        for (uint32_t j = 0; j < p; ++j) {
            Support& col = H.col_supports[blk * p + j];
            col.reserve(s.size());
            for (uint32_t e : s) col.push_back((e + j) % p);
            std::sort(col.begin(), col.end());
        }
        for (uint32_t row = 0; row < p; ++row) {
            Support& rs = H.row_supports[row];
            for (uint32_t e : s) rs.push_back(blk * p + (row + p - e % p) % p);
        }
    }
    for (auto& rs : H.row_supports) std::sort(rs.begin(), rs.end());
    return H;
}

ParityCheckMatrix build_monomial(uint32_t p, const std::vector<std::vector<uint32_t>>& shifts) {
    if (p == 0) throw SpecError("build_monomial: p must be positive");
    if (shifts.empty() || shifts[0].empty()) throw SpecError("build_monomial: empty shift matrix");
    const auto v = (uint32_t)shifts.size();
    const auto w = (uint32_t)shifts[0].size();
    for (const auto& rowv : shifts) {
        if (rowv.size() != w) throw SpecError("build_monomial: ragged shift matrix");
        for (uint32_t s : rowv)
            if (s >= p) throw SpecError("build_monomial: shift out of range [0, p)");
    }

    ParityCheckMatrix H;
    H.structure = CodeStructure::Monomial;
    H.p = p;
    H.v = v;
    H.w = w;
    H.n = w * p;
    H.r = v * p;
    H.shifts = shifts;
    H.col_supports.resize(H.n);
    H.row_supports.resize(H.r);

    for (uint32_t k = 0; k < w; ++k)
        for (uint32_t c = 0; c < p; ++c) {
            Support& col = H.col_supports[k * p + c];
            col.reserve(v);
            for (uint32_t j = 0; j < v; ++j) col.push_back(j * p + (c + shifts[j][k]) % p);
        }
    for (uint32_t j = 0; j < v; ++j)
        for (uint32_t rho = 0; rho < p; ++rho) {
            Support& rs = H.row_supports[j * p + rho];
            rs.reserve(w);
            for (uint32_t k = 0; k < w; ++k) rs.push_back(k * p + (rho + p - shifts[j][k]) % p);
            std::sort(rs.begin(), rs.end());
        }
    return H;
}

ParityCheckMatrix build_explicit(uint32_t n, const std::vector<Support>& row_supports) {
    if (n == 0) throw SpecError("build_explicit: n must be positive");
    ParityCheckMatrix H;
    H.structure = CodeStructure::Explicit;
    H.n = n;
    H.r = (uint32_t)row_supports.size();
    if (H.r == 0) throw SpecError("build_explicit: no rows");
    H.row_supports.reserve(H.r);
    for (const auto& rs : row_supports)
        H.row_supports.push_back(sorted_support(rs, n, "build_explicit: row"));
    H.col_supports = transpose_supports(H.row_supports, n);
    for (uint32_t i = 0; i < n; ++i)
        if (H.col_supports[i].empty())
            throw SpecError("build_explicit: column " + std::to_string(i) + " has weight 0");
    warn_duplicate_columns(H);
    return H;
}

std::vector<std::vector<uint32_t>> array_monomial_shifts(uint32_t p, uint32_t v, uint32_t w) {
    if (v == 0 || w == 0 || w > p) throw SpecError("array_monomial_shifts: need 0 < v, 0 < w <= p");
    std::vector<std::vector<uint32_t>> shifts(v, std::vector<uint32_t>(w));
    for (uint32_t j = 0; j < v; ++j)
        for (uint32_t k = 0; k < w; ++k) shifts[j][k] = (uint32_t)(((uint64_t)j * k) % p);
    return shifts;
}

BitVec syndrome(const ParityCheckMatrix& H, const BitVec& e) {
    if (e.size() != H.n) throw DimensionError("syndrome: error vector length != n");
    BitVec s(H.r, 0);
    for (uint32_t j = 0; j < H.r; ++j) {
        uint32_t parity = 0;
        for (uint32_t c : H.row_supports[j]) parity ^= e[c] & 1u;
        s[j] = (uint8_t)parity;
    }
    return s;
}

GirthResult girth(const ParityCheckMatrix& H, int cutoff) {
    if (cutoff < 4 || cutoff > 12 || cutoff % 2 != 0)
        throw DomainError("girth: cutoff must be one of {4, 6, 8, 10, 12}");

    std::vector<uint32_t> roots;
    switch (H.structure) {
        case CodeStructure::QC2:
            roots = {0, H.p};
            break;
        case CodeStructure::Monomial:
            for (uint32_t k = 0; k < H.w; ++k) roots.push_back(k * H.p);
            break;
        case CodeStructure::Explicit:
            for (uint32_t i = 0; i < H.n; ++i) roots.push_back(i);
            break;
    }

    // nodes: variables [0, n), checks [n, n + r)
    const uint32_t total = H.n + H.r;
    std::vector<uint32_t> epoch(total, 0), dist(total, 0), parent(total, 0), queue(total);
    uint32_t cur = 0;
    int best = cutoff + 2;

    for (uint32_t root : roots) {
        int limit = std::min(cutoff, best - 2) / 2; // expand nodes at depth < limit
        if (limit < 2) break;                       // best == 4 cannot be beaten
        ++cur;
        uint32_t head = 0, tail = 0;
        epoch[root] = cur;
        dist[root] = 0;
        parent[root] = UINT32_MAX;
        queue[tail++] = root;
        while (head < tail) {
            uint32_t u = queue[head++];
            if ((int)dist[u] >= limit) break;
            const bool is_var = u < H.n;
            const Support& nbrs = is_var ? H.col_supports[u] : H.row_supports[u - H.n];
            const uint32_t offset = is_var ? H.n : 0;
            for (uint32_t x : nbrs) {
                const uint32_t nb = x + offset;
                if (nb == parent[u]) continue;
                if (epoch[nb] != cur) {
                    epoch[nb] = cur;
                    dist[nb] = dist[u] + 1;
                    parent[nb] = u;
                    queue[tail++] = nb;
                } else {
                    const int cyc = (int)(dist[u] + dist[nb] + 1);
                    if (cyc < best) {
                        best = cyc;
                        limit = std::min(cutoff, best - 2) / 2;
                    }
                }
            }
        }
        if (best == 4) break;
    }
    if (best <= cutoff) return {best, true};
    return {cutoff + 2, false};
}

GammaRow adjacency_row(const ParityCheckMatrix& H, uint32_t i) {
    if (i >= H.n) throw DimensionError("adjacency_row: column index out of range");
    thread_local std::vector<uint32_t> counts;
    thread_local std::vector<uint32_t> touched;
    if (counts.size() < H.n) counts.resize(H.n, 0);

    for (uint32_t row : H.col_supports[i])
        for (uint32_t c : H.row_supports[row]) {
            if (c == i) continue;
            if (counts[c]++ == 0) touched.push_back(c);
        }

    std::vector<uint64_t> by_value(H.col_weight(i) + 1, 0);
    for (uint32_t c : touched) {
        by_value[counts[c]]++;
        counts[c] = 0;
    }
    touched.clear();

    GammaRow g;
    g.owner_col = i;
    g.length = (uint64_t)H.n - 1;
    for (uint32_t val = 1; val < by_value.size(); ++val)
        if (by_value[val]) g.entries.emplace_back(val, by_value[val]);
    return g;
}

std::vector<RowProfile> distinct_row_profiles(const ParityCheckMatrix& H) {
    std::vector<RowProfile> out;
    switch (H.structure) {
        case CodeStructure::QC2:
            out.push_back({adjacency_row(H, 0), H.p, H.col_weight(0)});
            out.push_back({adjacency_row(H, H.p), H.p, H.col_weight(H.p)});
            break;
        case CodeStructure::Monomial:
            for (uint32_t k = 0; k < H.w; ++k)
                out.push_back({adjacency_row(H, k * H.p), H.p, H.col_weight(k * H.p)});
            break;
        case CodeStructure::Explicit:
            return per_column_profiles(H);
    }
    return out;
}

std::vector<RowProfile> per_column_profiles(const ParityCheckMatrix& H) {
    std::vector<RowProfile> out;
    out.reserve(H.n);
    for (uint32_t i = 0; i < H.n; ++i) out.push_back({adjacency_row(H, i), 1, H.col_weight(i)});
    return out;
}

std::vector<RowProfile> qc2_row_profiles(uint32_t p, const Support& s0, const Support& s1) {
    if (p == 0) throw SpecError("qc2_row_profiles: p must be positive");
    Support a = sorted_support(s0, p, "qc2_row_profiles: S0");
    Support b = sorted_support(s1, p, "qc2_row_profiles: S1");
    if (a.size() != b.size()) throw SpecError("qc2_row_profiles: |S0| != |S1|");
    const auto v = (uint32_t)a.size();

    std::vector<uint32_t> hist(p, 0);
    // gamma values for one representative column of a block: overlaps with the
    // own block are the multiplicities of in-block support differences, overlaps
    // with the other block those of cross differences.
    auto profile_for = [&](const Support& own, const Support& other) {
        std::vector<uint64_t> by_value(v + 1, 0);
        for (uint32_t x : own)
            for (uint32_t y : own)
                if (x != y) hist[(x + p - y) % p]++;
        for (uint32_t d = 1; d < p; ++d) {
            by_value[hist[d]]++;
            hist[d] = 0;
        }
        for (uint32_t x : own)
            for (uint32_t y : other) hist[(x + p - y) % p]++;
        for (uint32_t d = 0; d < p; ++d) {
            by_value[hist[d]]++;
            hist[d] = 0;
        }
        GammaRow g;
        g.length = 2ull * p - 1;
        for (uint32_t val = 1; val <= v; ++val)
            if (by_value[val]) g.entries.emplace_back(val, by_value[val]);
        return g;
    };

    std::vector<RowProfile> out;
    GammaRow g0 = profile_for(a, b);
    g0.owner_col = 0;
    out.push_back({std::move(g0), p, v});
    GammaRow g1 = profile_for(b, a);
    g1.owner_col = p;
    out.push_back({std::move(g1), p, v});
    return out;
}

std::optional<std::pair<Support, Support>> search_girth6_qc2(uint32_t p, uint32_t v, uint64_t seed,
                                                             uint32_t max_restarts) {
    if (v < 1 || v > p) throw SpecError("search_girth6_qc2: need 1 <= v <= p");
    SplitMix64 rng = stream_rng(seed, 0x67697274u);

    std::vector<uint8_t> used_d0(p), used_d1(p), used_cross(p), member0(p), member1(p);
    std::vector<uint32_t> cand;

    for (uint32_t restart = 0; restart < max_restarts; ++restart) {
        std::fill(used_d0.begin(), used_d0.end(), 0);
        std::fill(used_d1.begin(), used_d1.end(), 0);
        std::fill(used_cross.begin(), used_cross.end(), 0);
        std::fill(member0.begin(), member0.end(), 0);
        std::fill(member1.begin(), member1.end(), 0);
        Support s0, s1;
        bool dead = false;

        auto try_add = [&](Support& s, std::vector<uint8_t>& used_in, std::vector<uint8_t>& member,
                           const Support& other, bool cross_lhs) {
            // up to 64 random candidates per slot before declaring a dead end
            for (int attempt = 0; attempt < 64; ++attempt) {
                auto x = (uint32_t)rng.below(p);
                if (member[x]) continue;
                cand.clear();
                bool ok = true;
                for (uint32_t s_e : s) {
                    uint32_t d1 = (x + p - s_e) % p, d2 = (s_e + p - x) % p;
                    if (used_in[d1] || used_in[d2] || d1 == d2) {
                        ok = false;
                        break;
                    }
                    cand.push_back(d1);
                    cand.push_back(d2);
                }
                if (ok) {
                    // new in-block differences must also be distinct among themselves
                    std::sort(cand.begin(), cand.end());
                    for (size_t i = 1; i < cand.size() && ok; ++i)
                        if (cand[i] == cand[i - 1]) ok = false;
                }
                if (ok && !other.empty()) {
                    for (uint32_t o : other) {
                        uint32_t d = cross_lhs ? (x + p - o) % p : (o + p - x) % p;
                        if (used_cross[d]) {
                            ok = false;
                            break;
                        }
                    }
                }
                if (!ok) continue;
                for (uint32_t d : cand) used_in[d] = 1;
                for (uint32_t o : other)
                    used_cross[cross_lhs ? (x + p - o) % p : (o + p - x) % p] = 1;
                member[x] = 1;
                s.push_back(x);
                return true;
            }
            return false;
        };

        for (uint32_t i = 0; i < v && !dead; ++i)
            dead = !try_add(s0, used_d0, member0, s1, true);
        for (uint32_t i = 0; i < v && !dead; ++i)
            dead = !try_add(s1, used_d1, member1, s0, false);
        if (!dead) {
            std::sort(s0.begin(), s0.end());
            std::sort(s1.begin(), s1.end());
            return std::make_pair(std::move(s0), std::move(s1));
        }
    }
    return std::nullopt;
}

namespace {

std::vector<uint32_t> json_uint_array(const nlohmann::json& arr, const char* what) {
    if (!arr.is_array()) throw SpecError(std::string(what) + ": expected an array");
    std::vector<uint32_t> out;
    out.reserve(arr.size());
    for (const auto& x : arr) {
        if (!x.is_number_integer() || x.get<int64_t>() < 0 || x.get<int64_t>() > UINT32_MAX)
            throw SpecError(std::string(what) + ": entries must be nonnegative integers");
        out.push_back(x.get<uint32_t>());
    }
    return out;
}

} // namespace

ParityCheckMatrix parse_code_spec(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw SpecError(std::string("code spec: invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string())
        throw SpecError("code spec: missing \"type\"");
    const std::string type = doc["type"].get<std::string>();

    if (type == "qc2") {
        if (!doc.contains("p") || !doc.contains("supports"))
            throw SpecError("code spec: qc2 needs \"p\" and \"supports\"");
        auto p = doc["p"].get<uint32_t>();
        const auto& sup = doc["supports"];
        if (!sup.is_array() || sup.size() != 2)
            throw SpecError("code spec: qc2 \"supports\" must hold exactly [S0, S1]");
        return build_qc2(p, json_uint_array(sup[0], "S0"), json_uint_array(sup[1], "S1"));
    }
    if (type == "monomial") {
        if (!doc.contains("p") || !doc.contains("shifts"))
            throw SpecError("code spec: monomial needs \"p\" and \"shifts\"");
        auto p = doc["p"].get<uint32_t>();
        const auto& sh = doc["shifts"];
        if (!sh.is_array() || sh.empty()) throw SpecError("code spec: empty \"shifts\"");
        std::vector<std::vector<uint32_t>> shifts;
        for (const auto& rowv : sh) shifts.push_back(json_uint_array(rowv, "shifts row"));
        return build_monomial(p, shifts);
    }
    if (type == "explicit") {
        if (!doc.contains("rows")) throw SpecError("code spec: explicit needs \"rows\"");
        const auto& rows = doc["rows"];
        if (!rows.is_array() || rows.empty()) throw SpecError("code spec: empty \"rows\"");
        std::vector<Support> row_supports;
        uint32_t maxcol = 0;
        for (const auto& rowv : rows) {
            row_supports.push_back(json_uint_array(rowv, "row"));
            for (uint32_t c : row_supports.back()) maxcol = std::max(maxcol, c);
        }
        uint32_t n = doc.contains("n") ? doc["n"].get<uint32_t>() : maxcol + 1;
        return build_explicit(n, row_supports);
    }
    throw SpecError("code spec: unknown type \"" + type + "\"");
}

std::string code_spec_json(const ParityCheckMatrix& H) {
    nlohmann::json doc;
    switch (H.structure) {
        case CodeStructure::QC2: {
            doc["type"] = "qc2";
            doc["p"] = H.p;
            // columns 0 and p carry the first-column supports unshifted
            doc["supports"] = {H.col_supports[0], H.col_supports[H.p]};
            break;
        }
        case CodeStructure::Monomial:
            doc["type"] = "monomial";
            doc["p"] = H.p;
            doc["shifts"] = H.shifts;
            break;
        case CodeStructure::Explicit:
            doc["type"] = "explicit";
            doc["n"] = H.n;
            doc["rows"] = H.row_supports;
            break;
    }
    return doc.dump(2) + "\n";
}

ParityCheckMatrix load_code_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open code spec file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_code_spec(ss.str());
}

}
