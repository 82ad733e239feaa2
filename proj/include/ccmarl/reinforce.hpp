#pragma once

// REINFORCE with a running-mean baseline, one update per episode. The
// shaping bonus is an episode-level statistic, so it is added once to the
// discounted return rather than spread over steps; for a score-function
// gradient the two are equivalent.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ccmarl/policy.hpp"
#include "ccmarl/trajectory.hpp"

namespace ccmarl {

struct LearnerHyper {
    double lr = 3e-3;
    double gamma = 0.95;
    double baseline_momentum = 0.9;

    void validate() const {
        if (lr < 0.0) throw std::invalid_argument("LearnerHyper: lr must be >= 0");
        if (gamma < 0.0 || gamma > 1.0)
            throw std::invalid_argument("LearnerHyper: gamma must be in [0, 1]");
        if (baseline_momentum < 0.0 || baseline_momentum >= 1.0)
            throw std::invalid_argument("LearnerHyper: baseline_momentum must be in [0, 1)");
    }

    bool operator==(const LearnerHyper&) const = default;
};

inline double discounted_return(const std::vector<double>& rewards, double gamma) {
    double g = 0.0;
    double weight = 1.0;
    for (const double r : rewards) {
        g += weight * r;
        weight *= gamma;
    }
    return g;
}

// Gradient of the surrogate objective J = advantage * sum_t log pi(a_t|o_t).
inline PolicyParams policy_gradient(const PolicyParams& params, const AgentTrajectory& trajectory,
                                    double advantage) {
    PolicyParams grad;  // zero-initialized
    for (std::size_t t = 0; t < trajectory.observations.size(); ++t)
        accumulate_log_prob_gradient(params, trajectory.observations[t],
                                     trajectory.raw_actions[t], advantage, grad);
    return grad;
}

// The same objective evaluated directly; used by the finite-difference check.
inline double surrogate_objective(const PolicyParams& params, const AgentTrajectory& trajectory,
                                  double advantage) {
    double sum = 0.0;
    for (std::size_t t = 0; t < trajectory.observations.size(); ++t)
        sum += policy_log_prob(params, trajectory.observations[t], trajectory.raw_actions[t]);
    return advantage * sum;
}

struct UpdateStats {
    double grad_norm = 0.0;
    double advantage = 0.0;
    double episode_return = 0.0;  // discounted env return plus bonus
};

struct UpdateResult {
    PolicyParams params;
    double baseline = 0.0;
    UpdateStats stats;
};

// One ascent step on the surrogate objective. A non-finite gradient rejects
// the update and leaves the caller's parameters untouched.
inline UpdateResult reinforce_update(const PolicyParams& params, double baseline,
                                     const AgentTrajectory& trajectory, double bonus,
                                     const LearnerHyper& hyper) {
    hyper.validate();
    const double episode_return = discounted_return(trajectory.rewards, hyper.gamma) + bonus;
    const double advantage = episode_return - baseline;

    const PolicyParams grad = policy_gradient(params, trajectory, advantage);
    const auto flat_grad = grad.flatten();
    double norm_sq = 0.0;
    for (const double g : flat_grad) {
        if (!std::isfinite(g))
            throw std::runtime_error("reinforce_update: non-finite gradient, update rejected");
        norm_sq += g * g;
    }

    auto flat = params.flatten();
    for (std::size_t i = 0; i < flat.size(); ++i) flat[i] += hyper.lr * flat_grad[i];

    UpdateResult result;
    result.params = PolicyParams::from_flat(flat);
    result.baseline = hyper.baseline_momentum * baseline +
                      (1.0 - hyper.baseline_momentum) * episode_return;
    result.stats = {std::sqrt(norm_sq), advantage, episode_return};
    return result;
}

// Central-difference verification of every partial derivative of the
// surrogate objective. Returns the maximum relative error
// |analytic - numeric| / max(|analytic|, |numeric|, 1e-8).
inline double grad_check(const PolicyParams& params, const AgentTrajectory& trajectory,
                         const LearnerHyper& hyper, double epsilon = 1e-5) {
    const double advantage = discounted_return(trajectory.rewards, hyper.gamma);
    const auto analytic = policy_gradient(params, trajectory, advantage).flatten();
    const auto flat = params.flatten();

    double max_rel_err = 0.0;
    for (std::size_t i = 0; i < flat.size(); ++i) {
        auto plus = flat;
        auto minus = flat;
        plus[i] += epsilon;
        minus[i] -= epsilon;
        const double numeric = (surrogate_objective(PolicyParams::from_flat(plus), trajectory,
                                                    advantage) -
                                surrogate_objective(PolicyParams::from_flat(minus), trajectory,
                                                    advantage)) /
                               (2.0 * epsilon);
        const double denom = std::max({std::abs(analytic[i]), std::abs(numeric), 1e-8});
        max_rel_err = std::max(max_rel_err, std::abs(analytic[i] - numeric) / denom);
    }
    return max_rel_err;
}

// Same comparison against a caller-supplied gradient; lets tests verify
// that a wrong gradient is actually flagged.
inline double grad_check_against(const std::vector<double>& candidate_grad,
                                 const PolicyParams& params, const AgentTrajectory& trajectory,
                                 const LearnerHyper& hyper, double epsilon = 1e-5) {
    const double advantage = discounted_return(trajectory.rewards, hyper.gamma);
    const auto flat = params.flatten();
    double max_rel_err = 0.0;
    for (std::size_t i = 0; i < flat.size(); ++i) {
        auto plus = flat;
        auto minus = flat;
        plus[i] += epsilon;
        minus[i] -= epsilon;
        const double numeric = (surrogate_objective(PolicyParams::from_flat(plus), trajectory,
                                                    advantage) -
                                surrogate_objective(PolicyParams::from_flat(minus), trajectory,
                                                    advantage)) /
                               (2.0 * epsilon);
        const double denom = std::max({std::abs(candidate_grad[i]), std::abs(numeric), 1e-8});
        max_rel_err = std::max(max_rel_err, std::abs(candidate_grad[i] - numeric) / denom);
    }
    return max_rel_err;
}

}  // namespace ccmarl
