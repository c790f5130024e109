#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cavmerge/data.hpp"
#include "cavmerge/parallel.hpp"
#include "cavmerge/rng.hpp"

namespace cavmerge {

// Result of one Lloyd fit. Centers are the exact means of their members and
// cluster ids are renumbered by first appearance in the label vector, so two
// fits that found the same partition compare equal field by field.
struct KMeansModel {
    DataMatrix centers;  // k x p
    Labeling labeling;
    std::vector<int> cluster_sizes;
    double wcss = 0.0;
    int iterations = 0;
    std::vector<double> wcss_history;  // one entry per assign/update round
};

namespace detail {

// Nearest-center assignment; ties go to the lowest center index. Returns the
// number of points whose label changed and fills dist_sq with the squared
// distance to the assigned center.
inline int assign_points(const DataMatrix& data, const std::vector<double>& centers,
                         int k, std::vector<int>& labels,
                         std::vector<double>& dist_sq) {
    const std::size_t n = data.rows(), p = data.cols();
    int changed = 0;
    if (p == 2) {
        // Split coordinate arrays so the inner loop vectorizes.
        std::vector<double> cx(static_cast<std::size_t>(k)), cy(cx.size());
        for (int c = 0; c < k; ++c) {
            cx[static_cast<std::size_t>(c)] = centers[static_cast<std::size_t>(c) * 2];
            cy[static_cast<std::size_t>(c)] = centers[static_cast<std::size_t>(c) * 2 + 1];
        }
        for (std::size_t i = 0; i < n; ++i) {
            const double x = data.at(i, 0), y = data.at(i, 1);
            int best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (int c = 0; c < k; ++c) {
                const double dx = x - cx[static_cast<std::size_t>(c)];
                const double dy = y - cy[static_cast<std::size_t>(c)];
                const double d = dx * dx + dy * dy;
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (labels[i] != best) {
                labels[i] = best;
                ++changed;
            }
            dist_sq[i] = best_d;
        }
        return changed;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto x = data.row(i);
        int best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (int c = 0; c < k; ++c) {
            const double* mu = centers.data() + static_cast<std::size_t>(c) * p;
            double d = 0.0;
            for (std::size_t j = 0; j < p; ++j) {
                const double diff = x[j] - mu[j];
                d += diff * diff;
            }
            if (d < best_d) {
                best_d = d;
                best = c;
            }
        }
        if (labels[i] != best) {
            labels[i] = best;
            ++changed;
        }
        dist_sq[i] = best_d;
    }
    return changed;
}

// Re-seed each empty cluster with the point currently farthest from its own
// center, never draining a cluster below one member. Ties go to the lowest
// point index; clusters are repaired in ascending id order.
inline bool repair_empty_clusters(int k, std::vector<int>& labels,
                                  std::vector<double>& dist_sq,
                                  std::vector<int>& sizes) {
    bool repaired = false;
    for (int e = 0; e < k; ++e) {
        if (sizes[static_cast<std::size_t>(e)] > 0) continue;
        std::size_t pick = labels.size();
        double far = -1.0;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (sizes[static_cast<std::size_t>(labels[i])] <= 1) continue;
            if (dist_sq[i] > far) {
                far = dist_sq[i];
                pick = i;
            }
        }
        // n >= k guarantees a donor cluster with at least two members.
        --sizes[static_cast<std::size_t>(labels[pick])];
        labels[pick] = e;
        sizes[static_cast<std::size_t>(e)] = 1;
        dist_sq[pick] = 0.0;
        repaired = true;
    }
    return repaired;
}

inline void update_centers(const DataMatrix& data, const std::vector<int>& labels,
                           const std::vector<int>& sizes, int k,
                           std::vector<double>& centers) {
    const std::size_t n = data.rows(), p = data.cols();
    std::fill(centers.begin(), centers.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double* mu = centers.data() + static_cast<std::size_t>(labels[i]) * p;
        const auto x = data.row(i);
        for (std::size_t j = 0; j < p; ++j) mu[j] += x[j];
    }
    for (int c = 0; c < k; ++c) {
        double* mu = centers.data() + static_cast<std::size_t>(c) * p;
        const double inv = 1.0 / static_cast<double>(sizes[static_cast<std::size_t>(c)]);
        for (std::size_t j = 0; j < p; ++j) mu[j] *= inv;
    }
}

inline double total_wcss(const DataMatrix& data, const std::vector<double>& centers,
                         const std::vector<int>& labels) {
    const std::size_t n = data.rows(), p = data.cols();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double* mu = centers.data() + static_cast<std::size_t>(labels[i]) * p;
        const auto x = data.row(i);
        for (std::size_t j = 0; j < p; ++j) {
            const double diff = x[j] - mu[j];
            total += diff * diff;
        }
    }
    return total;
}

}  // namespace detail

// Lloyd's algorithm with Forgy initialization (k distinct observations drawn
// uniformly from the seeded generator). Stops when an assignment pass changes
// no labels, when the relative wcss improvement drops below tol, or after
// max_iter rounds. Deterministic given (data, k, seed).
inline KMeansModel lloyd_fit(const DataMatrix& data, int k, std::uint64_t seed,
                             int max_iter = 300, double tol = 1e-6) {
    const std::size_t n = data.rows(), p = data.cols();
    if (k < 1 || static_cast<std::size_t>(k) > n)
        throw std::invalid_argument("lloyd_fit: need 1 <= k <= n");
    if (max_iter < 1) throw std::invalid_argument("lloyd_fit: max_iter must be >= 1");
    if (tol < 0.0) throw std::invalid_argument("lloyd_fit: tol must be >= 0");

    Rng rng(seed);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> centers(static_cast<std::size_t>(k) * p);
    for (int c = 0; c < k; ++c) {
        const std::size_t j =
            static_cast<std::size_t>(c) + rng.below(n - static_cast<std::size_t>(c));
        std::swap(order[static_cast<std::size_t>(c)], order[j]);
        const auto x = data.row(order[static_cast<std::size_t>(c)]);
        std::copy(x.begin(), x.end(), centers.begin() + static_cast<std::size_t>(c) * p);
    }

    std::vector<int> labels(n, -1);
    std::vector<double> dist_sq(n, 0.0);
    std::vector<int> sizes(static_cast<std::size_t>(k), 0);
    std::vector<double> history;
    double prev_wcss = std::numeric_limits<double>::infinity();
    int iterations = 0;

    for (int iter = 0; iter < max_iter; ++iter) {
        const int changed = detail::assign_points(data, centers, k, labels, dist_sq);
        std::fill(sizes.begin(), sizes.end(), 0);
        for (int id : labels) ++sizes[static_cast<std::size_t>(id)];
        const bool repaired = detail::repair_empty_clusters(k, labels, dist_sq, sizes);
        ++iterations;
        if (changed == 0 && !repaired) break;  // centers already match the labels
        detail::update_centers(data, labels, sizes, k, centers);
        const double wcss = detail::total_wcss(data, centers, labels);
        history.push_back(wcss);
        if (wcss == 0.0) break;
        if (prev_wcss - wcss < tol * prev_wcss) break;
        prev_wcss = wcss;
    }

    // Renumber by first appearance and permute the per-cluster arrays to match.
    std::vector<int> canonical = labels;
    canonicalize_labels(canonical);
    std::vector<double> perm_centers(centers.size());
    std::vector<int> perm_sizes(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < n; ++i) {
        const auto from = static_cast<std::size_t>(labels[i]);
        const auto to = static_cast<std::size_t>(canonical[i]);
        std::copy(centers.begin() + from * p, centers.begin() + (from + 1) * p,
                  perm_centers.begin() + to * p);
        perm_sizes[to] = sizes[from];
    }

    const double wcss = detail::total_wcss(data, perm_centers, canonical);
    KMeansModel model{DataMatrix(static_cast<std::size_t>(k), p, std::move(perm_centers)),
                      Labeling(std::move(canonical), k),
                      std::move(perm_sizes),
                      wcss,
                      iterations,
                      std::move(history)};
    return model;
}

// Independent restarts with sub-seeds derived from the run seed; returns the
// fit with minimal wcss, ties broken by the lowest start index. Restarts may
// execute in parallel; the winner does not depend on the schedule.
inline KMeansModel multi_start_fit(const DataMatrix& data, int k, int n_starts,
                                   std::uint64_t seed, int threads = 1,
                                   int max_iter = 300, double tol = 1e-6) {
    if (n_starts < 1) throw std::invalid_argument("multi_start_fit: n_starts >= 1");
    // validate everything here; worker threads must not throw
    if (k < 1 || static_cast<std::size_t>(k) > data.rows())
        throw std::invalid_argument("multi_start_fit: need 1 <= k <= n");
    if (max_iter < 1 || tol < 0.0)
        throw std::invalid_argument("multi_start_fit: bad max_iter or tol");
    std::vector<std::optional<KMeansModel>> fits(static_cast<std::size_t>(n_starts));
    parallel_for(static_cast<std::size_t>(n_starts), threads, [&](std::size_t s) {
        fits[s] = lloyd_fit(data, k, sub_seed(seed, s), max_iter, tol);
    });
    std::size_t best = 0;
    for (std::size_t s = 1; s < fits.size(); ++s)
        if (fits[s]->wcss < fits[best]->wcss) best = s;
    return std::move(*fits[best]);
}

}  // namespace cavmerge
