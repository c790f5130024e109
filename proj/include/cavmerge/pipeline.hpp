#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "cavmerge/adjacency.hpp"
#include "cavmerge/datasets.hpp"
#include "cavmerge/evaluation.hpp"
#include "cavmerge/kmeans.hpp"
#include "cavmerge/merging.hpp"
#include "cavmerge/model_select.hpp"
#include "cavmerge/scoring.hpp"

namespace cavmerge {

struct PipelineConfig {
    int force_k = 0;          // > 0 skips jump selection and fits exactly this K
    int k_max = 0;            // 0 = default_k_max(n)
    int n_starts = 25;
    int target_clusters = 0;  // exactly one of target_clusters / score_threshold
    double score_threshold = 0.0;
    std::uint64_t seed = 1;
    bool standardize = false;
    int threads = 1;
};

struct PipelineResult {
    int selected_k;
    std::vector<double> jump_distortions;  // empty when K was forced
    std::vector<double> jump_values;
    KMeansModel model;
    AdjacencySet adjacency;
    ScoreMatrix scores;  // after the sparse-cluster adjustment
    Dendrogram dendrogram;
    FinalClustering final;
    double ari;  // NaN when not computable
    double wall_seconds;
};

namespace detail {

template <typename Fn>
auto pipeline_stage(const char* name, Fn&& fn) {
    try {
        return fn();
    } catch (const DataError& e) {
        throw DataError(std::string("stage ") + name + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("stage ") + name + ": " + e.what());
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("stage ") + name + ": " + e.what());
    }
}

}  // namespace detail

// The five-step merging pipeline: select K (jump statistic unless forced),
// fit multi-start K-means, find adjacent pairs, score them, rescue sparse
// clusters, then single-linkage merge and cut by count or by threshold.
// A pure function of (dataset, config); the same inputs give the same result
// for any thread count.
inline PipelineResult run_pipeline(const LabeledDataset& dataset,
                                   const PipelineConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    if ((config.target_clusters > 0) == (config.score_threshold > 0.0))
        throw std::invalid_argument(
            "run_pipeline: choose exactly one of target clusters / score threshold");
    if (config.n_starts < 1)
        throw std::invalid_argument("run_pipeline: n_starts must be >= 1");

    const DataMatrix data = config.standardize ? standardize_features(dataset.data)
                                               : dataset.data;
    const std::size_t n = data.rows();

    int selected_k = 0;
    std::vector<double> distortions, jumps;
    std::optional<KMeansModel> model;
    if (config.force_k > 0) {
        selected_k = config.force_k;
        model = detail::pipeline_stage("kmeans", [&] {
            return multi_start_fit(data, config.force_k, config.n_starts,
                                   sub_seed(config.seed,
                                            static_cast<std::uint64_t>(config.force_k)),
                                   config.threads);
        });
    } else {
        const int k_max = config.k_max > 0 ? config.k_max : default_k_max(n);
        JumpProfile profile = detail::pipeline_stage("model-select", [&] {
            return jump_select(data, k_max, config.n_starts, config.seed,
                               config.threads);
        });
        selected_k = profile.selected_k;
        distortions = std::move(profile.distortions);
        jumps = std::move(profile.jumps);
        model = std::move(profile.selected_model);
    }

    AdjacencySet adjacency;
    adjacency.k = selected_k;
    if (selected_k >= 2)
        adjacency = detail::pipeline_stage(
            "adjacency", [&] { return find_adjacent_pairs(data, *model); });

    ScoreMatrix scores = detail::pipeline_stage("scoring", [&] {
        if (selected_k < 2) return ScoreMatrix(1);
        return adjust_sparse_clusters(score_matrix(data, *model, adjacency,
                                                   config.threads),
                                      *model);
    });

    Dendrogram dendro =
        detail::pipeline_stage("merging", [&] { return build_dendrogram(scores); });
    FinalClustering final_clusters = detail::pipeline_stage("merging", [&] {
        return config.target_clusters > 0
                   ? cut_by_count(dendro, config.target_clusters, model->labeling)
                   : cut_by_threshold(dendro, config.score_threshold, model->labeling);
    });

    double ari = std::numeric_limits<double>::quiet_NaN();
    if (n >= 2)
        ari = detail::pipeline_stage("evaluation", [&] {
            return adjusted_rand_index(final_clusters.final_labels.labels,
                                       dataset.true_labels.labels);
        });

    const auto t1 = std::chrono::steady_clock::now();
    return PipelineResult{selected_k,
                          std::move(distortions),
                          std::move(jumps),
                          std::move(*model),
                          std::move(adjacency),
                          std::move(scores),
                          std::move(dendro),
                          std::move(final_clusters),
                          ari,
                          std::chrono::duration<double>(t1 - t0).count()};
}

}  // namespace cavmerge
