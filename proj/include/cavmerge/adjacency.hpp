#pragma once

#include <limits>
#include <set>
#include <stdexcept>
#include <utility>

#include "cavmerge/kmeans.hpp"

namespace cavmerge {

// Unordered cluster pairs believed to share a nontrivial decision boundary.
struct AdjacencySet {
    std::set<std::pair<int, int>> pairs;  // stored as (low id, high id)
    int k = 0;

    std::size_t size() const { return pairs.size(); }
    bool contains(int a, int b) const {
        return pairs.count(a < b ? std::make_pair(a, b) : std::make_pair(b, a)) > 0;
    }
};

// Approximate Delaunay identification: each observation votes for the pair
// formed by its two nearest centers. The union over observations never
// contains a pair whose Voronoi cells do not touch, and any missed pair has
// no data near the shared boundary, i.e. nothing worth merging across.
// O(nK) distance evaluations. Ties for either slot go to the lower index.
inline AdjacencySet find_adjacent_pairs(const DataMatrix& data,
                                        const KMeansModel& model) {
    const int k = model.labeling.k;
    if (k < 2) throw std::invalid_argument("find_adjacent_pairs: need K >= 2");
    if (data.cols() != model.centers.cols())
        throw std::invalid_argument("find_adjacent_pairs: dimension mismatch");

    AdjacencySet out;
    out.k = k;
    const std::size_t n = data.rows(), p = data.cols();
    for (std::size_t i = 0; i < n; ++i) {
        const auto x = data.row(i);
        int first = -1, second = -1;
        double d_first = std::numeric_limits<double>::infinity();
        double d_second = std::numeric_limits<double>::infinity();
        for (int c = 0; c < k; ++c) {
            const auto mu = model.centers.row(static_cast<std::size_t>(c));
            double d = 0.0;
            for (std::size_t j = 0; j < p; ++j) {
                const double diff = x[j] - mu[j];
                d += diff * diff;
            }
            if (d < d_first) {
                d_second = d_first;
                second = first;
                d_first = d;
                first = c;
            } else if (d < d_second) {
                d_second = d;
                second = c;
            }
        }
        out.pairs.emplace(first < second ? first : second,
                          first < second ? second : first);
    }
    return out;
}

}  // namespace cavmerge
