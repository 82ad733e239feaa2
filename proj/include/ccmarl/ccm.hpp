#pragma once

// Convergent cross mapping. If series Y influences series X, the attractor
// reconstructed from X encodes Y, so cross-map estimates of Y from X's
// manifold improve as the neighbor library grows. The skill curve over
// library sizes, and in particular its value at the largest library, is the
// causal-influence score.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccmarl/embedding.hpp"
#include "ccmarl/rng.hpp"
#include "ccmarl/simplex.hpp"
#include "ccmarl/time_series.hpp"

namespace ccmarl {

struct CcmResult {
    std::vector<int> library_sizes;
    std::vector<double> skills;      // mean cross-map skill per library size
    double score = 0.0;              // mean skill at the largest library size
    double convergence_delta = 0.0;  // skill(L_max) - skill(L_min)
    bool degenerate = false;         // set when either series was constant
};

// Mean cross-map skill of estimating `y` from `x`'s shadow manifold, for
// each library size in `library_sizes` (strictly increasing), averaged over
// `n_draws` random library subsets. Deterministic given the rng state.
inline CcmResult ccm_curve(const TimeSeries& x, const TimeSeries& y,
                           const EmbeddingParams& params, const std::vector<int>& library_sizes,
                           int n_draws, Rng& rng) {
    params.validate();
    if (x.size() != y.size())
        throw std::invalid_argument("ccm_curve: series lengths differ (" +
                                    std::to_string(x.size()) + " vs " + std::to_string(y.size()) +
                                    ")");
    if (library_sizes.empty()) throw std::invalid_argument("ccm_curve: no library sizes given");
    if (n_draws < 1) throw std::invalid_argument("ccm_curve: n_draws must be >= 1");
    for (std::size_t i = 1; i < library_sizes.size(); ++i)
        if (library_sizes[i] <= library_sizes[i - 1])
            throw std::invalid_argument("ccm_curve: library sizes must be strictly increasing");

    CcmResult result;
    result.library_sizes = library_sizes;

    if (is_constant(x.values) || is_constant(y.values)) {
        result.skills.assign(library_sizes.size(), 0.0);
        result.degenerate = true;
        return result;
    }

    const auto manifold = delay_embed(x, params);
    const int m = manifold.size();
    for (const int L : library_sizes) {
        if (L < params.E + 2)
            throw std::invalid_argument("ccm_curve: library size " + std::to_string(L) +
                                        " below minimum E+2 = " + std::to_string(params.E + 2));
        if (L > m)
            throw std::invalid_argument("ccm_curve: library size " + std::to_string(L) +
                                        " exceeds manifold size " + std::to_string(m));
    }

    result.skills.reserve(library_sizes.size());
    std::vector<int> full_library;
    for (const int L : library_sizes) {
        double mean_skill = 0.0;
        if (L == m) {
            // Every draw would return the whole manifold; compute once.
            if (full_library.empty())
                for (int i = 0; i < m; ++i) full_library.push_back(i);
            mean_skill = cross_map(manifold, y, full_library).skill;
        } else {
            for (int d = 0; d < n_draws; ++d) {
                const auto library = sample_without_replacement(m, L, rng);
                mean_skill += cross_map(manifold, y, library).skill;
            }
            mean_skill /= static_cast<double>(n_draws);
        }
        result.skills.push_back(mean_skill);
    }

    result.score = result.skills.back();
    result.convergence_delta = result.skills.back() - result.skills.front();
    return result;
}

struct CcmScore {
    double value = 0.0;
    bool degenerate = false;
};

// Single-library-size score, the fast form used inside training loops.
inline CcmScore ccm_score(const TimeSeries& x, const TimeSeries& y, const EmbeddingParams& params,
                          int library_size, int n_draws, Rng& rng) {
    const auto result = ccm_curve(x, y, params, std::vector<int>{library_size}, n_draws, rng);
    return {result.score, result.degenerate};
}

}  // namespace ccmarl
