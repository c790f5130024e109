#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace cavmerge {

// Cross-tabulation of two labelings of the same n observations.
struct ContingencyTable {
    int rows = 0;
    int cols = 0;
    std::vector<std::int64_t> counts;  // rows x cols
    std::vector<std::int64_t> row_sums;
    std::vector<std::int64_t> col_sums;
    std::int64_t n = 0;

    std::int64_t at(int r, int c) const {
        return counts[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + c];
    }

    static ContingencyTable build(std::span<const int> a, std::span<const int> b) {
        if (a.size() != b.size())
            throw std::invalid_argument("ContingencyTable: length mismatch");
        std::unordered_map<int, int> map_a, map_b;
        std::vector<int> da(a.size()), db(b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            auto [ita, ia] = map_a.try_emplace(a[i], static_cast<int>(map_a.size()));
            auto [itb, ib] = map_b.try_emplace(b[i], static_cast<int>(map_b.size()));
            (void)ia;
            (void)ib;
            da[i] = ita->second;
            db[i] = itb->second;
        }
        ContingencyTable t;
        t.rows = static_cast<int>(map_a.size());
        t.cols = static_cast<int>(map_b.size());
        t.n = static_cast<std::int64_t>(a.size());
        t.counts.assign(static_cast<std::size_t>(t.rows) * t.cols, 0);
        t.row_sums.assign(static_cast<std::size_t>(t.rows), 0);
        t.col_sums.assign(static_cast<std::size_t>(t.cols), 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            ++t.counts[static_cast<std::size_t>(da[i]) * t.cols + db[i]];
            ++t.row_sums[static_cast<std::size_t>(da[i])];
            ++t.col_sums[static_cast<std::size_t>(db[i])];
        }
        return t;
    }
};

namespace detail {
inline std::int64_t comb2(std::int64_t m) { return m * (m - 1) / 2; }

inline bool same_partition(std::span<const int> a, std::span<const int> b) {
    std::unordered_map<int, int> fa, fb;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const int ca = static_cast<int>(fa.try_emplace(a[i], static_cast<int>(fa.size()))
                                            .first->second);
        const int cb = static_cast<int>(fb.try_emplace(b[i], static_cast<int>(fb.size()))
                                            .first->second);
        if (ca != cb) return false;
    }
    return true;
}
}  // namespace detail

// Chance-corrected pair-counting agreement between two partitions; 1 means a
// perfect match up to relabeling, small negatives are possible. When the
// classic denominator degenerates to zero (both partitions all singletons or
// both one cluster) the value is defined as 1 for equal partitions, else 0.
inline double adjusted_rand_index(std::span<const int> a, std::span<const int> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("adjusted_rand_index: length mismatch");
    if (a.size() < 2)
        throw std::invalid_argument("adjusted_rand_index: need n >= 2");

    const ContingencyTable t = ContingencyTable::build(a, b);
    std::int64_t sum_cells = 0;
    for (std::int64_t c : t.counts) sum_cells += detail::comb2(c);
    std::int64_t sum_a = 0, sum_b = 0;
    for (std::int64_t r : t.row_sums) sum_a += detail::comb2(r);
    for (std::int64_t c : t.col_sums) sum_b += detail::comb2(c);

    const long double total_pairs = static_cast<long double>(detail::comb2(t.n));
    const long double expected =
        static_cast<long double>(sum_a) * static_cast<long double>(sum_b) / total_pairs;
    const long double denom =
        0.5L * (static_cast<long double>(sum_a) + static_cast<long double>(sum_b)) -
        expected;
    if (denom == 0.0L) return detail::same_partition(a, b) ? 1.0 : 0.0;
    return static_cast<double>((static_cast<long double>(sum_cells) - expected) / denom);
}

inline double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
    return adjusted_rand_index(std::span<const int>(a), std::span<const int>(b));
}

struct SummaryStats {
    double mean = 0.0;
    double std_error = 0.0;
};

// Mean and sample standard deviation (n-1 denominator); a single value has
// standard error 0 by convention.
inline SummaryStats mean_and_stderr(std::span<const double> values) {
    if (values.empty())
        throw std::invalid_argument("mean_and_stderr: empty input");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    if (values.size() == 1) return {mean, 0.0};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / static_cast<double>(values.size() - 1))};
}

inline SummaryStats mean_and_stderr(const std::vector<double>& values) {
    return mean_and_stderr(std::span<const double>(values));
}

}  // namespace cavmerge
