#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cavmerge/kmeans.hpp"

namespace cavmerge {

// Jump-statistic scan over K = 1..k_max. distortions[K-1] holds the average
// per-point per-dimension within-cluster squared distance d_K of the best
// multi-start fit at K; jumps[K-1] holds J_K = d_K^-Y - d_{K-1}^-Y with the
// convention d_0^-Y = 0 and Y = p/2.
struct JumpProfile {
    int k_max;  // number of K values actually evaluated
    std::vector<double> distortions;
    std::vector<double> jumps;
    int selected_k;
    double power;
    KMeansModel selected_model;
};

// Over-segmentation cap for the initial fit: floor(sqrt(n)) with a floor of
// 30, never exceeding n.
inline int default_k_max(std::size_t n) {
    if (n < 1) throw std::invalid_argument("default_k_max: n must be >= 1");
    auto root = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    while ((root + 1) * (root + 1) <= n) ++root;
    while (root * root > n) --root;
    std::size_t k = root < 30 ? 30 : root;
    if (k > n) k = n;
    return static_cast<int>(k);
}

// Fits every K with multi-start K-means (K uses sub_seed(seed, K), so a later
// refit of any single K reproduces the stored result) and picks the K with
// the largest jump, smallest K on ties. A zero-distortion K is a perfect fit;
// the scan stops there and selects it.
inline JumpProfile jump_select(const DataMatrix& data, int k_max, int n_starts,
                               std::uint64_t seed, int threads = 1) {
    const std::size_t n = data.rows();
    if (k_max < 1 || static_cast<std::size_t>(k_max) > n)
        throw std::invalid_argument("jump_select: need 1 <= k_max <= n");
    if (n_starts < 1) throw std::invalid_argument("jump_select: n_starts >= 1");

    std::vector<std::optional<KMeansModel>> fits(static_cast<std::size_t>(k_max));
    parallel_for(fits.size(), threads, [&](std::size_t i) {
        const int k = static_cast<int>(i) + 1;
        fits[i] = multi_start_fit(data, k, n_starts,
                                  sub_seed(seed, static_cast<std::uint64_t>(k)));
    });

    const double denom = static_cast<double>(n) * static_cast<double>(data.cols());
    const double power = static_cast<double>(data.cols()) / 2.0;

    std::vector<double> distortions, jumps;
    int selected_k = 0;
    double prev_transformed = 0.0;  // d_0^-Y
    for (std::size_t i = 0; i < fits.size(); ++i) {
        const double d = fits[i]->wcss / denom;
        distortions.push_back(d);
        if (d == 0.0) {
            jumps.push_back(std::numeric_limits<double>::infinity());
            selected_k = static_cast<int>(i) + 1;
            break;
        }
        const double transformed = std::pow(d, -power);
        jumps.push_back(transformed - prev_transformed);
        prev_transformed = transformed;
    }
    if (selected_k == 0) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < jumps.size(); ++i)
            if (jumps[i] > jumps[best]) best = i;
        selected_k = static_cast<int>(best) + 1;
    }
    const int evaluated = static_cast<int>(jumps.size());
    return JumpProfile{evaluated, std::move(distortions), std::move(jumps), selected_k,
                       power,
                       std::move(*fits[static_cast<std::size_t>(selected_k) - 1])};
}

}  // namespace cavmerge
