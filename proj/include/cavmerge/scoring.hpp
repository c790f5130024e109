#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cavmerge/adjacency.hpp"
#include "cavmerge/geometry.hpp"
#include "cavmerge/kmeans.hpp"
#include "cavmerge/parallel.hpp"

namespace cavmerge {

// Point counts for the three congruent open cylinders strung along the line
// between two cluster centers: m1 around the first center, m2 around the
// midpoint, m3 around the second center. radius is the largest perpendicular
// distance from any member of either cluster to that line, so the lateral
// count boundary adapts to the pair itself and the score stays scale-free.
struct CylinderCounts {
    std::int64_t m1 = 0;
    std::int64_t m2 = 0;
    std::int64_t m3 = 0;
    double radius = 0.0;
    int k1 = 0;
    int k2 = 0;
};

// Symmetric K x K matrix of merging scores. Diagonal entries are +inf;
// entries for pairs never scored stay exactly 0.
class ScoreMatrix {
public:
    explicit ScoreMatrix(int k) : k_(k), s_(static_cast<std::size_t>(k) * k, 0.0) {
        if (k < 1) throw std::invalid_argument("ScoreMatrix: k must be >= 1");
        for (int i = 0; i < k; ++i)
            s_[idx(i, i)] = std::numeric_limits<double>::infinity();
    }

    int k() const { return k_; }

    double at(int i, int j) const {
        check(i, j);
        return s_[idx(i, j)];
    }

    void set(int i, int j, double value) {
        check(i, j);
        if (i == j) throw std::invalid_argument("ScoreMatrix: diagonal is fixed");
        if (!(value >= 0.0))  // rejects negatives and NaN
            throw std::invalid_argument("ScoreMatrix: score must be >= 0");
        s_[idx(i, j)] = value;
        s_[idx(j, i)] = value;
    }

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(k_) +
               static_cast<std::size_t>(j);
    }
    void check(int i, int j) const {
        if (i < 0 || j < 0 || i >= k_ || j >= k_)
            throw std::invalid_argument("ScoreMatrix: index out of range");
    }

    int k_;
    std::vector<double> s_;
};

// Counts for one adjacent pair. The counting sums run over all n
// observations, not just the pair's members, so points of third clusters that
// fall inside a cylinder contribute. m1 surrounds the center of k1; swapping
// the pair order swaps m1 and m3 and leaves the score unchanged.
inline CylinderCounts pair_counts(const DataMatrix& data, const KMeansModel& model,
                                  int k1, int k2) {
    const int k = model.labeling.k;
    if (k1 == k2 || k1 < 0 || k2 < 0 || k1 >= k || k2 >= k)
        throw std::invalid_argument("pair_counts: invalid cluster pair");
    if (data.cols() != model.centers.cols())
        throw std::invalid_argument("pair_counts: dimension mismatch");
    if (model.cluster_sizes[static_cast<std::size_t>(k1)] < 1 ||
        model.cluster_sizes[static_cast<std::size_t>(k2)] < 1)
        throw std::invalid_argument("pair_counts: empty cluster");

    const std::size_t p = data.cols(), n = data.rows();
    const auto mu1 = model.centers.row(static_cast<std::size_t>(k1));
    const auto mu2 = model.centers.row(static_cast<std::size_t>(k2));
    bool coincident = true;
    for (std::size_t j = 0; j < p; ++j)
        if (mu1[j] != mu2[j]) {
            coincident = false;
            break;
        }
    if (coincident)
        throw std::invalid_argument("pair_counts: coincident centers");

    std::vector<double> axis(p), midpoint(p);
    double axis_sq = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
        axis[j] = mu2[j] - mu1[j];
        midpoint[j] = (mu1[j] + mu2[j]) / 2.0;
        axis_sq += axis[j] * axis[j];
    }
    const double half_length = std::sqrt(axis_sq) / 4.0;

    double radius = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const int id = model.labeling.labels[i];
        if (id != k1 && id != k2) continue;
        const double d = line_distance(data.row(i), mu1, mu2);
        if (d > radius) radius = d;
    }

    CylinderCounts counts;
    counts.radius = radius;
    counts.k1 = k1;
    counts.k2 = k2;
    const std::span<const double> axis_span(axis);
    const std::span<const double> mid_span(midpoint);
    for (std::size_t i = 0; i < n; ++i) {
        const auto x = data.row(i);
        if (cylinder_membership(x, mu1, axis_span, half_length, radius, mu1, mu2))
            ++counts.m1;
        if (cylinder_membership(x, mid_span, axis_span, half_length, radius, mu1, mu2))
            ++counts.m2;
        if (cylinder_membership(x, mu2, axis_span, half_length, radius, mu1, mu2))
            ++counts.m3;
    }
    return counts;
}

inline double score_from_counts(const CylinderCounts& c) {
    if (c.m1 == 0 || c.m3 == 0) return 0.0;  // no within-cluster evidence
    return static_cast<double>(c.m2) * static_cast<double>(c.m2) /
           (static_cast<double>(c.m1) * static_cast<double>(c.m3));
}

// Merging scores s = m2^2 / (m1 m3) for every adjacent pair. Pairs whose
// centers coincide exactly (possible only with duplicated data) are
// indistinguishable in space and get +inf so they merge first.
inline ScoreMatrix score_matrix(const DataMatrix& data, const KMeansModel& model,
                                const AdjacencySet& adjacency, int threads = 1) {
    if (adjacency.k != model.labeling.k)
        throw std::invalid_argument("score_matrix: adjacency/model K mismatch");
    if (data.cols() != model.centers.cols())
        throw std::invalid_argument("score_matrix: dimension mismatch");
    ScoreMatrix scores(model.labeling.k);
    const std::vector<std::pair<int, int>> pairs(adjacency.pairs.begin(),
                                                 adjacency.pairs.end());
    std::vector<double> values(pairs.size(), 0.0);
    parallel_for(pairs.size(), threads, [&](std::size_t i) {
        const auto [a, b] = pairs[i];
        const auto mu1 = model.centers.row(static_cast<std::size_t>(a));
        const auto mu2 = model.centers.row(static_cast<std::size_t>(b));
        bool coincident = true;
        for (std::size_t j = 0; j < data.cols(); ++j)
            if (mu1[j] != mu2[j]) {
                coincident = false;
                break;
            }
        values[i] = coincident ? std::numeric_limits<double>::infinity()
                               : score_from_counts(pair_counts(data, model, a, b));
    });
    for (std::size_t i = 0; i < pairs.size(); ++i)
        scores.set(pairs[i].first, pairs[i].second, values[i]);
    return scores;
}

// Rescue for extremely sparse clusters: every cluster with three or fewer
// members is linked to its nearest neighboring center with an infinite score,
// so it cannot survive as a spurious singleton class. Ties on center distance
// go to the lower index.
inline ScoreMatrix adjust_sparse_clusters(const ScoreMatrix& scores,
                                          const KMeansModel& model) {
    const int k = model.labeling.k;
    if (scores.k() != k)
        throw std::invalid_argument("adjust_sparse_clusters: K mismatch");
    ScoreMatrix out = scores;
    if (k < 2) return out;
    const std::size_t p = model.centers.cols();
    for (int c = 0; c < k; ++c) {
        if (model.cluster_sizes[static_cast<std::size_t>(c)] > 3) continue;
        int nearest = -1;
        double best = std::numeric_limits<double>::infinity();
        const auto mu = model.centers.row(static_cast<std::size_t>(c));
        for (int other = 0; other < k; ++other) {
            if (other == c) continue;
            const auto nu = model.centers.row(static_cast<std::size_t>(other));
            double d = 0.0;
            for (std::size_t j = 0; j < p; ++j) {
                const double diff = mu[j] - nu[j];
                d += diff * diff;
            }
            if (d < best) {
                best = d;
                nearest = other;
            }
        }
        out.set(c, nearest, std::numeric_limits<double>::infinity());
    }
    return out;
}

// Plain-text square matrix, one row per line, "inf" as the infinity literal.
inline std::string score_matrix_to_csv(const ScoreMatrix& scores) {
    std::string out;
    char buf[40];
    for (int i = 0; i < scores.k(); ++i) {
        for (int j = 0; j < scores.k(); ++j) {
            if (j > 0) out += ',';
            const double v = scores.at(i, j);
            if (std::isinf(v)) {
                out += "inf";
            } else {
                std::snprintf(buf, sizeof(buf), "%.17g", v);
                out += buf;
            }
        }
        out += '\n';
    }
    return out;
}

}  // namespace cavmerge
