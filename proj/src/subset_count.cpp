#include "bfcert/subset_count.hpp"

#include <algorithm>
#include <map>

#include "bfcert/errors.hpp"

namespace bfcert {

CompressedVector compress(std::span<const int64_t> values) {
    std::map<int64_t, uint64_t> tally;
    for (int64_t v : values) {
        if (v < 0) throw DomainError("compress: negative entry");
        ++tally[v];
    }
    CompressedVector cv;
    cv.length = values.size();
    cv.levels.assign(tally.begin(), tally.end());
    return cv;
}

namespace {

// Counts size-m subsets with sum <= alpha, split by the number j of distinct
// values the subset uses. For j >= 2 the smallest selected value y_{i_0} gets
// the leftover multiplicity m_0 = m - sum(m_u), which must stay >= 1: a subset
// in which y_{i_0} does not actually appear uses only j-1 distinct values and
// is already counted there. Multiplicity caps come from the remaining budget
// (alpha - m*y_{i_0}) divided by the value gap, with every still-unassigned
// level reserved at multiplicity 1.
class NotExceedingCounter {
  public:
    NotExceedingCounter(const CompressedVector& cv, uint64_t m, int64_t alpha, CountStats* stats)
        : levels_(cv.levels), m_(m), alpha_(alpha), stats_(stats) {}

    BigInt count() {
        sum_ = 0;
        // j = 1: all m entries share one value, so m*y <= alpha decides.
        for (const auto& [y, lam] : levels_) {
            tick();
            if (y * (int64_t)m_ > alpha_) break; // values ascend
            sum_ += binomial(lam, m_);
        }
        const uint64_t jmax = std::min<uint64_t>(m_, levels_.size());
        for (uint64_t j = 2; j <= jmax; ++j) {
            j_ = j;
            idx_.assign(j, 0);
            choose_levels(0, 0);
        }
        return sum_;
    }

  private:
    void tick() {
        if (stats_) ++stats_->configurations;
    }

    // ascending level-index combinations idx_[pos..j_-1] drawn from [from, omega)
    void choose_levels(uint64_t pos, uint64_t from) {
        if (pos == j_) {
            evaluate_combination();
            return;
        }
        for (uint64_t i = from; i + (j_ - pos) <= levels_.size(); ++i) {
            if (pos == 0 && levels_[i].first * (int64_t)m_ > alpha_) break;
            idx_[pos] = i;
            choose_levels(pos + 1, i + 1);
        }
    }

    void evaluate_combination() {
        tick();
        y0_ = levels_[idx_[0]].first;
        budget_ = alpha_ - (int64_t)m_ * y0_;
        if (budget_ < 0) return;
        // suffix_min_[u]: cost of giving every level in [u, j) multiplicity 1
        suffix_min_.assign(j_ + 1, 0);
        for (uint64_t u = j_; u-- > 1;)
            suffix_min_[u] = suffix_min_[u + 1] + (levels_[idx_[u]].first - y0_);
        if (suffix_min_[1] > budget_) return; // no assignment exists for this combination
        descend(1, 0, 0, BigInt(1));
    }

    void descend(uint64_t u, uint64_t used, int64_t spent, const BigInt& partial) {
        if (u == j_) {
            tick();
            sum_ += partial * binomial(levels_[idx_[0]].second, m_ - used);
            return;
        }
        const int64_t gap = levels_[idx_[u]].first - y0_;
        const int64_t room = budget_ - spent - suffix_min_[u + 1];
        if (room < gap) return;
        auto cap = (uint64_t)(room / gap);
        cap = std::min<uint64_t>(cap, levels_[idx_[u]].second);
        // each remaining level and the smallest value still need >= 1 entry
        cap = std::min<uint64_t>(cap, m_ - used - (j_ - 1 - u) - 1);
        for (uint64_t mu = 1; mu <= cap; ++mu)
            descend(u + 1, used + mu, spent + (int64_t)mu * gap,
                    partial * binomial(levels_[idx_[u]].second, mu));
    }

    const std::vector<std::pair<int64_t, uint64_t>>& levels_;
    const uint64_t m_;
    const int64_t alpha_;
    CountStats* stats_;

    uint64_t j_ = 0;
    int64_t y0_ = 0;
    int64_t budget_ = 0;
    std::vector<uint64_t> idx_;
    std::vector<int64_t> suffix_min_;
    BigInt sum_;
};

} // namespace

BigInt count_exceeding(const CompressedVector& cv, uint64_t m, int64_t alpha, CountStats* stats) {
    if (m > cv.length) throw DomainError("count_exceeding: subset size exceeds vector length");
    BigInt all = binomial(cv.length, m);
    if (alpha < 0) return all; // entries are nonnegative, every sum exceeds
    if (m == 0) return 0;      // the empty sum is 0 <= alpha

    // cheap range checks on the extreme subsets
    int64_t max_sum = 0, min_sum = 0;
    uint64_t take = m;
    for (auto it = cv.levels.rbegin(); it != cv.levels.rend() && take; ++it) {
        uint64_t q = std::min(take, it->second);
        max_sum += (int64_t)q * it->first;
        take -= q;
    }
    if (max_sum <= alpha) return 0;
    take = m;
    for (auto it = cv.levels.begin(); it != cv.levels.end() && take; ++it) {
        uint64_t q = std::min(take, it->second);
        min_sum += (int64_t)q * it->first;
        take -= q;
    }
    if (min_sum > alpha) return all;

    NotExceedingCounter counter(cv, m, alpha, stats);
    return all - counter.count();
}

BigInt count_exceeding_bruteforce(std::span<const int64_t> values, uint64_t m, int64_t alpha) {
    const uint64_t l = values.size();
    if (l > 25) throw GuardError("count_exceeding_bruteforce: refusing l > 25");
    if (m > l) throw DomainError("count_exceeding_bruteforce: subset size exceeds vector length");
    if (m == 0) return 0 > alpha ? 1 : 0;

    uint64_t hits = 0;
    std::vector<uint32_t> idx(m);
    for (uint64_t i = 0; i < m; ++i) idx[i] = (uint32_t)i;
    while (true) {
        int64_t s = 0;
        for (uint32_t i : idx) s += values[i];
        if (s > alpha) ++hits;
        // next combination in lexicographic order
        uint64_t k = m;
        while (k > 0 && idx[k - 1] == l - m + (k - 1)) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (uint64_t i = k; i < m; ++i) idx[i] = idx[i - 1] + 1;
    }
    return BigInt((unsigned long)hits);
}

BigInt theta(uint64_t l, uint64_t x, uint64_t m, int64_t alpha) {
    if (m > l) throw DomainError("theta: weight exceeds length");
    if (x > l) throw DomainError("theta: subset size exceeds length");
    if (alpha >= (int64_t)m || (int64_t)x <= alpha) return 0;
    BigInt s = 0;
    const auto jmax = (uint64_t)std::min(m, x);
    for (auto j = (uint64_t)std::max<int64_t>(alpha + 1, 0); j <= jmax; ++j)
        s += binomial(m, j) * binomial(l - m, x - j);
    return s;
}

}
