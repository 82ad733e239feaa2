#pragma once

// Coordination-based reward shaping. Each agent's action sequence is
// scalarized, the pairwise cross-map summary is computed over one episode,
// and agent i receives -kappa * |C_i - theta| where C_i is its per-agent
// mean score clipped to [0, 1]. Too little and too much measured
// coordination are penalized alike; the target theta is the experimental
// knob.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccmarl/coordination.hpp"
#include "ccmarl/embedding.hpp"
#include "ccmarl/time_series.hpp"
#include "ccmarl/trajectory.hpp"

namespace ccmarl {

enum class PairSelection { predators_only, all_pairs };
enum class Scalarization { x_component, heading_angle };
enum class PenaltyKind { absolute, squared };

struct ShapingConfig {
    double theta = 0.5;   // target coordination level in [0, 1]
    double kappa = 1.0;   // penalty weight per unit deviation
    int ccm_L = 80;       // library size for in-training scores
    int ccm_draws = 8;    // library draws per score during training
    PairSelection pairs = PairSelection::predators_only;
    Scalarization scalarization = Scalarization::x_component;
    PenaltyKind penalty = PenaltyKind::absolute;

    void validate() const {
        if (theta < 0.0 || theta > 1.0)
            throw std::invalid_argument("ShapingConfig: theta must be in [0, 1]");
        if (kappa < 0.0) throw std::invalid_argument("ShapingConfig: kappa must be >= 0");
        if (ccm_L < 1) throw std::invalid_argument("ShapingConfig: ccm_L must be >= 1");
        if (ccm_draws < 1) throw std::invalid_argument("ShapingConfig: ccm_draws must be >= 1");
    }

    bool operator==(const ShapingConfig&) const = default;
};

// Reduces a 2D action sequence to one scalar series. x_component takes the
// first component of the emitted action; heading_angle takes atan2 of the
// action vector, unwrapped so consecutive samples never jump by more than pi.
inline TimeSeries scalarize_actions(const AgentTrajectory& trajectory, Scalarization kind) {
    std::vector<double> values;
    values.reserve(trajectory.actions.size());
    if (kind == Scalarization::x_component) {
        for (const Vec2& a : trajectory.actions) values.push_back(a.x);
    } else {
        double prev = 0.0;
        double offset = 0.0;
        bool first = true;
        for (const Vec2& a : trajectory.actions) {
            const double angle = std::atan2(a.y, a.x);
            if (!first) {
                double delta = angle - prev;
                while (delta > std::numbers::pi) {
                    offset -= 2.0 * std::numbers::pi;
                    delta -= 2.0 * std::numbers::pi;
                }
                while (delta < -std::numbers::pi) {
                    offset += 2.0 * std::numbers::pi;
                    delta += 2.0 * std::numbers::pi;
                }
            }
            values.push_back(angle + offset);
            prev = angle;
            first = false;
        }
    }
    return TimeSeries(std::move(values));
}

struct BonusResult {
    std::array<double, kNumAgents> bonus{};
    CoordinationSummary summary;
};

inline int shaping_min_episode_length(const ShapingConfig& shaping,
                                      const EmbeddingParams& params) {
    const int span = (params.E - 1) * params.tau;
    // Manifold must hold both the neighbor library and at least E+2 points.
    return span + std::max(shaping.ccm_L, params.E + 2);
}

// Episode-level shaping bonus per agent. With predators_only, the summary
// covers agents 0..2 and the prey bonus is zero.
inline BonusResult coordination_bonus(const TrajectoryBatch& batch, const ShapingConfig& shaping,
                                      const EmbeddingParams& ccm_params, std::uint64_t seed) {
    shaping.validate();
    const int min_len = shaping_min_episode_length(shaping, ccm_params);
    if (batch.length() < min_len)
        throw std::invalid_argument("coordination_bonus: episode length " +
                                    std::to_string(batch.length()) +
                                    " below minimum " + std::to_string(min_len) + " for (E=" +
                                    std::to_string(ccm_params.E) + ", tau=" +
                                    std::to_string(ccm_params.tau) + ", ccm_L=" +
                                    std::to_string(shaping.ccm_L) + ")");

    const int scored_agents =
        shaping.pairs == PairSelection::predators_only ? kNumPredators : kNumAgents;
    std::vector<TimeSeries> series;
    series.reserve(static_cast<std::size_t>(scored_agents));
    for (int a = 0; a < scored_agents; ++a)
        series.push_back(scalarize_actions(batch.agents[static_cast<std::size_t>(a)],
                                           shaping.scalarization));

    BonusResult result;
    result.summary = pairwise_coordination(series, ccm_params, shaping.ccm_L, shaping.ccm_draws,
                                           seed);
    for (int a = 0; a < scored_agents; ++a) {
        const double clipped =
            std::clamp(result.summary.per_agent_mean[static_cast<std::size_t>(a)], 0.0, 1.0);
        const double deviation = std::abs(clipped - shaping.theta);
        double bonus = shaping.penalty == PenaltyKind::absolute
                           ? -shaping.kappa * deviation
                           : -shaping.kappa * deviation * deviation;
        if (bonus == 0.0) bonus = 0.0;  // normalize -0.0 so serialized output is stable
        result.bonus[static_cast<std::size_t>(a)] = bonus;
    }
    return result;
}

}  // namespace ccmarl
