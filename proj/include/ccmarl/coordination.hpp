#pragma once

// Pairwise coordination over agent action series. Entry (i, j) cross-maps
// agent j's actions from agent i's manifold, i.e. it measures the influence
// of agent j on agent i: the influenced series is the one that encodes the
// influencer.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccmarl/ccm.hpp"
#include "ccmarl/rng.hpp"
#include "ccmarl/time_series.hpp"

namespace ccmarl {

struct CoordinationSummary {
    int agent_count = 0;
    std::vector<double> pair_scores;       // row-major agent_count x agent_count, diagonal 0
    std::vector<bool> pair_degenerate;     // same layout
    std::vector<double> per_agent_mean;    // mean of off-diagonal scores involving the agent
    double overall_mean = 0.0;             // mean of all off-diagonal entries

    double score(int i, int j) const {
        return pair_scores[static_cast<std::size_t>(i * agent_count + j)];
    }
};

// Each ordered pair (i, j) is scored with its own child rng stream derived
// as derive_seed(seed, i, j), so any single entry is reproducible by calling
// ccm_score directly with that stream.
inline CoordinationSummary pairwise_coordination(const std::vector<TimeSeries>& action_series,
                                                 const EmbeddingParams& params, int library_size,
                                                 int n_draws, std::uint64_t seed) {
    const int agents = static_cast<int>(action_series.size());
    if (agents < 2)
        throw std::invalid_argument("pairwise_coordination: need at least 2 agents");
    for (int i = 1; i < agents; ++i)
        if (action_series[static_cast<std::size_t>(i)].size() != action_series[0].size())
            throw std::invalid_argument(
                "pairwise_coordination: series length mismatch for agent " + std::to_string(i));

    CoordinationSummary summary;
    summary.agent_count = agents;
    summary.pair_scores.assign(static_cast<std::size_t>(agents * agents), 0.0);
    summary.pair_degenerate.assign(static_cast<std::size_t>(agents * agents), false);

    for (int i = 0; i < agents; ++i) {
        for (int j = 0; j < agents; ++j) {
            if (i == j) continue;
            Rng pair_rng(derive_seed(seed, static_cast<std::uint64_t>(i),
                                     static_cast<std::uint64_t>(j)));
            const auto score =
                ccm_score(action_series[static_cast<std::size_t>(i)],
                          action_series[static_cast<std::size_t>(j)], params, library_size,
                          n_draws, pair_rng);
            summary.pair_scores[static_cast<std::size_t>(i * agents + j)] = score.value;
            summary.pair_degenerate[static_cast<std::size_t>(i * agents + j)] = score.degenerate;
        }
    }

    summary.per_agent_mean.assign(static_cast<std::size_t>(agents), 0.0);
    double total = 0.0;
    for (int i = 0; i < agents; ++i) {
        double agent_sum = 0.0;
        for (int j = 0; j < agents; ++j) {
            if (i == j) continue;
            agent_sum += summary.score(i, j) + summary.score(j, i);
            total += summary.score(i, j);
        }
        summary.per_agent_mean[static_cast<std::size_t>(i)] =
            agent_sum / static_cast<double>(2 * (agents - 1));
    }
    summary.overall_mean = total / static_cast<double>(agents * (agents - 1));
    return summary;
}

}  // namespace ccmarl
