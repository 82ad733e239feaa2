#pragma once

// Simplex projection: a query point is predicted as the convex combination
// of its E+1 nearest library neighbors' target values, with weights decaying
// exponentially in the distance ratio to the closest neighbor. Cross-mapping
// runs the same estimator from one series' manifold onto another series and
// scores the estimates by Pearson correlation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccmarl/embedding.hpp"
#include "ccmarl/neighbors.hpp"
#include "ccmarl/time_series.hpp"

namespace ccmarl {

inline constexpr double kSimplexEpsilon = 1e-12;

// w_i = u_i / sum(u), u_i = exp(-(d_i + eps) / (d_1 + eps)). The epsilon
// keeps the ratio defined when the closest neighbor is an exact match, in
// which case that neighbor absorbs essentially all weight.
inline std::vector<double> simplex_weights(const std::vector<double>& distances) {
    if (distances.empty()) throw std::invalid_argument("simplex_weights: empty distance list");
    for (std::size_t i = 0; i < distances.size(); ++i) {
        if (distances[i] < 0.0)
            throw std::invalid_argument("simplex_weights: negative distance at index " +
                                        std::to_string(i));
        if (i > 0 && distances[i] < distances[i - 1])
            throw std::invalid_argument("simplex_weights: distances not sorted ascending");
    }
    const double scale = distances.front() + kSimplexEpsilon;
    std::vector<double> weights(distances.size());
    double total = 0.0;
    for (std::size_t i = 0; i < distances.size(); ++i) {
        // floor at the smallest normal double: exp underflows to zero for
        // distance ratios beyond ~700, but the weights must stay positive
        weights[i] = std::max(std::exp(-(distances[i] + kSimplexEpsilon) / scale),
                              std::numeric_limits<double>::min());
        total += weights[i];
    }
    for (double& w : weights) w /= total;
    return weights;
}

using WeightFn = std::vector<double> (*)(const std::vector<double>&);

struct CrossMapResult {
    std::vector<int> times;        // times with an estimate
    std::vector<double> estimates; // cross-mapped target values
    std::vector<double> observed;  // target values at the same times
    double skill = 0.0;            // pearson(estimates, observed)
    bool degenerate = false;
};

// Estimates the target series from the source manifold using only the given
// library points as neighbor candidates. For every manifold point, the E+1
// nearest admissible library neighbors vote with simplex weights; queries
// left with fewer than E+1 admissible neighbors produce no estimate.
inline CrossMapResult cross_map(const ShadowManifold& manifold, const TimeSeries& target,
                                const std::vector<int>& library_indices,
                                WeightFn weight_fn = &simplex_weights) {
    const int m = manifold.size();
    const int k = manifold.params.E + 1;
    if (static_cast<int>(library_indices.size()) < manifold.params.E + 2)
        throw std::invalid_argument(
            "cross_map: library too small: " + std::to_string(library_indices.size()) +
            " points, need at least E+2 = " + std::to_string(manifold.params.E + 2));
    for (const int idx : library_indices)
        if (idx < 0 || idx >= m)
            throw std::invalid_argument("cross_map: library index out of range");
    if (static_cast<int>(target.size()) != manifold.series_length())
        throw std::invalid_argument(
            "cross_map: target length " + std::to_string(target.size()) +
            " does not match source series length " + std::to_string(manifold.series_length()));

    CrossMapResult result;
    result.times.reserve(static_cast<std::size_t>(m));
    result.estimates.reserve(static_cast<std::size_t>(m));
    result.observed.reserve(static_cast<std::size_t>(m));

    std::vector<double> dists(static_cast<std::size_t>(k));
    for (int q = 0; q < m; ++q) {
        const auto neighbors = neighbor_query_restricted(manifold, q, library_indices, k);
        if (static_cast<int>(neighbors.size()) < k) continue;
        for (int i = 0; i < k; ++i) dists[static_cast<std::size_t>(i)] = neighbors[static_cast<std::size_t>(i)].distance;
        const auto weights = weight_fn(dists);
        double estimate = 0.0;
        for (int i = 0; i < k; ++i) {
            const int t = manifold.time_index[static_cast<std::size_t>(neighbors[static_cast<std::size_t>(i)].index)];
            estimate += weights[static_cast<std::size_t>(i)] * target[static_cast<std::size_t>(t)];
        }
        result.times.push_back(manifold.time_index[static_cast<std::size_t>(q)]);
        result.estimates.push_back(estimate);
        result.observed.push_back(target[static_cast<std::size_t>(manifold.time_index[static_cast<std::size_t>(q)])]);
    }

    if (result.estimates.size() < 2) {
        result.skill = 0.0;
        result.degenerate = true;
        return result;
    }
    const auto p = pearson(result.estimates, result.observed);
    result.skill = p.degenerate ? 0.0 : p.r;
    result.degenerate = p.degenerate;
    return result;
}

}  // namespace ccmarl
