#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "cavmerge/data.hpp"
#include "cavmerge/scoring.hpp"

namespace cavmerge {

// One agglomeration step. Node ids 0..K-1 are the initial clusters; step s
// creates node K+s from the two listed children.
struct MergeStep {
    int left = 0;
    int right = 0;
    double height = 0.0;
};

struct Dendrogram {
    std::vector<MergeStep> merges;  // K-1 steps, non-decreasing heights
    int leaf_count = 0;
};

// Mapping from initial cluster ids to final cluster ids, plus the composed
// per-observation labeling. Every final cluster is a union of initial ones.
struct FinalClustering {
    std::vector<int> cluster_map;
    Labeling final_labels;
    int n_final = 0;
};

// Single linkage over the K initial clusters with distance 1/s. IEEE
// semantics give the two sentinels directly: 1/inf = 0 (forced merges come
// first) and 1/0 = inf (unscored pairs never merge directly, though single
// linkage may still fuse them through a chain). Ties between equal-distance
// pairs resolve to the lexicographically smallest (low id, high id) pair.
inline Dendrogram build_dendrogram(const ScoreMatrix& scores) {
    const int k = scores.k();
    const int total = 2 * k - 1;
    std::vector<double> dist(static_cast<std::size_t>(total) * total,
                             std::numeric_limits<double>::infinity());
    auto d = [&](int a, int b) -> double& {
        return dist[static_cast<std::size_t>(a) * total + b];
    };
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) d(i, j) = 1.0 / scores.at(i, j);

    std::vector<int> active;
    for (int i = 0; i < k; ++i) active.push_back(i);

    Dendrogram out;
    out.leaf_count = k;
    for (int step = 0; step + 1 < k; ++step) {
        int best_a = -1, best_b = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t ai = 0; ai < active.size(); ++ai)
            for (std::size_t bi = ai + 1; bi < active.size(); ++bi) {
                const double cur = d(active[ai], active[bi]);
                if (best_a < 0 || cur < best_d) {
                    best_d = cur;
                    best_a = active[ai];
                    best_b = active[bi];
                }
            }
        const int merged = k + step;
        for (int node : active) {
            if (node == best_a || node == best_b) continue;
            const double combined = std::min(d(std::min(node, best_a), std::max(node, best_a)),
                                             d(std::min(node, best_b), std::max(node, best_b)));
            d(node, merged) = combined;
        }
        std::erase(active, best_a);
        std::erase(active, best_b);
        active.push_back(merged);
        out.merges.push_back({best_a, best_b, best_d});
    }
    return out;
}

namespace detail {

// Applies the first `applied` merge steps and returns the induced mapping of
// initial clusters to dense final ids, numbered by first appearance.
inline FinalClustering partition_from_prefix(const Dendrogram& dendro,
                                             std::size_t applied,
                                             const Labeling& initial) {
    const int k = dendro.leaf_count;
    if (initial.k != k)
        throw std::invalid_argument("cut: labeling does not match dendrogram leaves");
    std::vector<int> parent(static_cast<std::size_t>(2 * k - 1));
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    for (std::size_t s = 0; s < applied; ++s) {
        parent[static_cast<std::size_t>(dendro.merges[s].left)] = k + static_cast<int>(s);
        parent[static_cast<std::size_t>(dendro.merges[s].right)] = k + static_cast<int>(s);
    }
    auto find_root = [&](int node) {
        while (parent[static_cast<std::size_t>(node)] != node)
            node = parent[static_cast<std::size_t>(node)];
        return node;
    };

    FinalClustering out;
    out.cluster_map.resize(static_cast<std::size_t>(k));
    std::vector<int> root_to_id(static_cast<std::size_t>(2 * k - 1), -1);
    int next_id = 0;
    for (int leaf = 0; leaf < k; ++leaf) {
        const int root = find_root(leaf);
        if (root_to_id[static_cast<std::size_t>(root)] < 0)
            root_to_id[static_cast<std::size_t>(root)] = next_id++;
        out.cluster_map[static_cast<std::size_t>(leaf)] =
            root_to_id[static_cast<std::size_t>(root)];
    }
    out.n_final = next_id;

    std::vector<int> labels(initial.labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
        labels[i] = out.cluster_map[static_cast<std::size_t>(initial.labels[i])];
    out.final_labels = Labeling(std::move(labels), out.n_final);
    return out;
}

}  // namespace detail

// Undoes the last target-1 merges; target = K is the identity partition.
inline FinalClustering cut_by_count(const Dendrogram& dendro, int target,
                                    const Labeling& initial) {
    const int k = dendro.leaf_count;
    if (target < 1 || target > k)
        throw std::invalid_argument("cut_by_count: target out of range");
    return detail::partition_from_prefix(
        dendro, static_cast<std::size_t>(k - target), initial);
}

// Fuses every pair connected through edges with score above the threshold,
// i.e. applies exactly the merge steps with height < 1/threshold.
inline FinalClustering cut_by_threshold(const Dendrogram& dendro,
                                        double score_threshold,
                                        const Labeling& initial) {
    if (!(score_threshold > 0.0))
        throw std::invalid_argument("cut_by_threshold: threshold must be > 0");
    const double cutoff = 1.0 / score_threshold;
    std::size_t applied = 0;
    while (applied < dendro.merges.size() && dendro.merges[applied].height < cutoff)
        ++applied;
    return detail::partition_from_prefix(dendro, applied, initial);
}

// Merge-list CSV (step, left, right, height) for external plotting.
inline std::string dendrogram_to_csv(const Dendrogram& dendro) {
    std::string out = "step,left,right,height\n";
    char buf[64];
    for (std::size_t s = 0; s < dendro.merges.size(); ++s) {
        const auto& m = dendro.merges[s];
        if (std::isinf(m.height)) {
            std::snprintf(buf, sizeof(buf), "%zu,%d,%d,inf\n", s, m.left, m.right);
        } else {
            std::snprintf(buf, sizeof(buf), "%zu,%d,%d,%.17g\n", s, m.left, m.right,
                          m.height);
        }
        out += buf;
    }
    return out;
}

}  // namespace cavmerge
