#pragma once

// Independent reference implementations used only by tests. Each one
// recomputes its quantity from raw coordinates along a different arithmetic
// route than the library, so agreement is a real cross-check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "cavmerge/data.hpp"
#include "cavmerge/kmeans.hpp"
#include "cavmerge/rng.hpp"

namespace oracles {

struct CountsTriple {
    std::int64_t m1 = 0;
    std::int64_t m2 = 0;
    std::int64_t m3 = 0;
    double radius = 0.0;
};

// Perpendicular distance via an explicitly normalized direction vector
// (the library keeps the direction unnormalized).
inline double perp_distance(std::span<const double> x, std::span<const double> a,
                            std::span<const double> b) {
    const std::size_t p = x.size();
    std::vector<double> unit(p);
    double len = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
        unit[j] = b[j] - a[j];
        len += unit[j] * unit[j];
    }
    len = std::sqrt(len);
    for (std::size_t j = 0; j < p; ++j) unit[j] /= len;
    double along = 0.0, diff_sq = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
        const double d = x[j] - a[j];
        along += d * unit[j];
        diff_sq += d * d;
    }
    return std::sqrt(std::max(0.0, diff_sq - along * along));
}

inline double axial_offset(std::span<const double> x, std::span<const double> center,
                           std::span<const double> dir) {
    std::vector<double> unit(dir.begin(), dir.end());
    double len = 0.0;
    for (double v : unit) len += v * v;
    len = std::sqrt(len);
    for (double& v : unit) v /= len;
    double along = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) along += (x[j] - center[j]) * unit[j];
    return std::fabs(along);
}

// Full reimplementation of the three-cylinder counting for one cluster pair:
// recomputes the radius, midpoint, and both membership inequalities per point
// from scratch.
inline CountsTriple brute_pair_counts(const cavmerge::DataMatrix& data,
                                      const cavmerge::KMeansModel& model, int k1,
                                      int k2) {
    const std::size_t p = data.cols(), n = data.rows();
    const auto mu1 = model.centers.row(static_cast<std::size_t>(k1));
    const auto mu2 = model.centers.row(static_cast<std::size_t>(k2));
    std::vector<double> dir(p), mid(p);
    double dir_len = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
        dir[j] = mu2[j] - mu1[j];
        mid[j] = 0.5 * (mu1[j] + mu2[j]);
        dir_len += dir[j] * dir[j];
    }
    dir_len = std::sqrt(dir_len);
    const double half_len = dir_len / 4.0;

    CountsTriple out;
    for (std::size_t i = 0; i < n; ++i) {
        const int id = model.labeling.labels[i];
        if (id != k1 && id != k2) continue;
        out.radius = std::max(out.radius, perp_distance(data.row(i), mu1, mu2));
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto x = data.row(i);
        const double d = perp_distance(x, mu1, mu2);
        if (d >= out.radius) continue;
        if (axial_offset(x, mu1, dir) < half_len) ++out.m1;
        if (axial_offset(x, mid, dir) < half_len) ++out.m2;
        if (axial_offset(x, mu2, dir) < half_len) ++out.m3;
    }
    return out;
}

// ARI by enumerating all point pairs and counting agreements.
inline double ari_by_pair_enumeration(const std::vector<int>& a,
                                      const std::vector<int>& b) {
    const std::size_t n = a.size();
    std::int64_t together_both = 0, together_a = 0, together_b = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool same_a = a[i] == a[j];
            const bool same_b = b[i] == b[j];
            together_a += same_a;
            together_b += same_b;
            together_both += same_a && same_b;
        }
    const double total = static_cast<double>(n) * (n - 1) / 2.0;
    const double expected = static_cast<double>(together_a) * together_b / total;
    const double denom = 0.5 * (together_a + together_b) - expected;
    if (denom == 0.0) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if ((a[i] == a[j]) != (b[i] == b[j])) return 0.0;
        return 1.0;
    }
    return (together_both - expected) / denom;
}

// The two nearest centers of a point, lowest index on ties.
inline std::pair<int, int> two_nearest_centers(std::span<const double> x,
                                               const cavmerge::DataMatrix& centers) {
    int first = -1, second = -1;
    double d1 = std::numeric_limits<double>::infinity();
    double d2 = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centers.rows(); ++c) {
        double d = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double diff = x[j] - centers.at(c, j);
            d += diff * diff;
        }
        if (d < d1) {
            d2 = d1;
            second = first;
            d1 = d;
            first = static_cast<int>(c);
        } else if (d < d2) {
            d2 = d;
            second = static_cast<int>(c);
        }
    }
    return first < second ? std::make_pair(first, second)
                          : std::make_pair(second, first);
}

// Nontrivial-boundary oracle for 2D models: grid the bounding box of the data
// at the given resolution and collect the pair of two nearest centers at
// every grid node. A pair absent from this set has no observed witness region
// between its centers at this resolution.
inline std::set<std::pair<int, int>> grid_adjacent_pairs(
    const cavmerge::DataMatrix& data, const cavmerge::DataMatrix& centers,
    int resolution = 200) {
    double min_x = data.at(0, 0), max_x = min_x;
    double min_y = data.at(0, 1), max_y = min_y;
    for (std::size_t i = 1; i < data.rows(); ++i) {
        min_x = std::min(min_x, data.at(i, 0));
        max_x = std::max(max_x, data.at(i, 0));
        min_y = std::min(min_y, data.at(i, 1));
        max_y = std::max(max_y, data.at(i, 1));
    }
    std::set<std::pair<int, int>> pairs;
    for (int gx = 0; gx < resolution; ++gx)
        for (int gy = 0; gy < resolution; ++gy) {
            const double x[2] = {
                min_x + (max_x - min_x) * gx / (resolution - 1.0),
                min_y + (max_y - min_y) * gy / (resolution - 1.0)};
            pairs.insert(two_nearest_centers(std::span<const double>(x, 2), centers));
        }
    return pairs;
}

// Honest model construction from a fixed partition: centers are the member
// means, sizes and wcss recomputed from scratch.
inline cavmerge::KMeansModel model_from_labels(const cavmerge::DataMatrix& data,
                                               std::vector<int> labels, int k) {
    const std::size_t n = data.rows(), p = data.cols();
    std::vector<double> centers(static_cast<std::size_t>(k) * p, 0.0);
    std::vector<int> sizes(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < n; ++i) {
        ++sizes[static_cast<std::size_t>(labels[i])];
        for (std::size_t j = 0; j < p; ++j)
            centers[static_cast<std::size_t>(labels[i]) * p + j] += data.at(i, j);
    }
    for (int c = 0; c < k; ++c)
        for (std::size_t j = 0; j < p; ++j)
            centers[static_cast<std::size_t>(c) * p + j] /=
                static_cast<double>(sizes[static_cast<std::size_t>(c)]);
    double wcss = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            const double diff =
                data.at(i, j) - centers[static_cast<std::size_t>(labels[i]) * p + j];
            wcss += diff * diff;
        }
    return cavmerge::KMeansModel{
        cavmerge::DataMatrix(static_cast<std::size_t>(k), p, std::move(centers)),
        cavmerge::Labeling(std::move(labels), k),
        std::move(sizes),
        wcss,
        0,
        {}};
}

// Standard normal CDF.
inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Random orthogonal matrix via Gram-Schmidt on Gaussian columns.
inline std::vector<double> random_rotation(std::size_t p, cavmerge::Rng& rng) {
    std::vector<double> q(p * p);
    for (std::size_t col = 0; col < p; ++col) {
        std::vector<double> v(p);
        for (std::size_t j = 0; j < p; ++j) v[j] = rng.normal();
        for (std::size_t prev = 0; prev < col; ++prev) {
            double dot = 0.0;
            for (std::size_t j = 0; j < p; ++j) dot += v[j] * q[j * p + prev];
            for (std::size_t j = 0; j < p; ++j) v[j] -= dot * q[j * p + prev];
        }
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        for (std::size_t j = 0; j < p; ++j) q[j * p + col] = v[j] / norm;
    }
    return q;  // row-major p x p
}

inline std::vector<double> apply_rotation(const std::vector<double>& q,
                                          std::span<const double> x) {
    const std::size_t p = x.size();
    std::vector<double> out(p, 0.0);
    for (std::size_t r = 0; r < p; ++r)
        for (std::size_t c = 0; c < p; ++c) out[r] += q[r * p + c] * x[c];
    return out;
}

}  // namespace oracles
