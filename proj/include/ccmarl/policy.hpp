#pragma once

// Diagonal-Gaussian policy over 2D accelerations: obs(16) -> tanh hidden(32)
// -> action mean(2), with a learnable per-dimension log standard deviation.
// Parameters are plain value types; every update produces a new record.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ccmarl/env.hpp"
#include "ccmarl/rng.hpp"
#include "ccmarl/vec2.hpp"

namespace ccmarl {

inline constexpr int kHiddenDim = 32;
inline constexpr int kActionDim = 2;
inline constexpr int kPolicyParamCount =
    kObsDim * kHiddenDim + kHiddenDim + kHiddenDim * kActionDim + kActionDim + kActionDim;

struct PolicyParams {
    std::array<double, kHiddenDim * kObsDim> w1{};   // row-major [hidden][obs]
    std::array<double, kHiddenDim> b1{};
    std::array<double, kActionDim * kHiddenDim> w2{};  // row-major [action][hidden]
    std::array<double, kActionDim> b2{};
    std::array<double, kActionDim> log_std{};

    bool operator==(const PolicyParams&) const = default;

    std::vector<double> flatten() const {
        std::vector<double> flat;
        flat.reserve(kPolicyParamCount);
        flat.insert(flat.end(), w1.begin(), w1.end());
        flat.insert(flat.end(), b1.begin(), b1.end());
        flat.insert(flat.end(), w2.begin(), w2.end());
        flat.insert(flat.end(), b2.begin(), b2.end());
        flat.insert(flat.end(), log_std.begin(), log_std.end());
        return flat;
    }

    static PolicyParams from_flat(const std::vector<double>& flat) {
        if (static_cast<int>(flat.size()) != kPolicyParamCount)
            throw std::invalid_argument("PolicyParams: expected " +
                                        std::to_string(kPolicyParamCount) + " values, got " +
                                        std::to_string(flat.size()));
        PolicyParams p;
        auto it = flat.begin();
        for (auto& v : p.w1) v = *it++;
        for (auto& v : p.b1) v = *it++;
        for (auto& v : p.w2) v = *it++;
        for (auto& v : p.b2) v = *it++;
        for (auto& v : p.log_std) v = *it++;
        return p;
    }
};

// Weights uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)], biases zero,
// log_std -0.5.
inline PolicyParams policy_init(std::uint64_t seed) {
    Rng rng(seed);
    PolicyParams p;
    const double s1 = 1.0 / std::sqrt(static_cast<double>(kObsDim));
    for (auto& w : p.w1) w = rng.uniform(-s1, s1);
    const double s2 = 1.0 / std::sqrt(static_cast<double>(kHiddenDim));
    for (auto& w : p.w2) w = rng.uniform(-s2, s2);
    p.log_std.fill(-0.5);
    return p;
}

struct PolicyForward {
    std::array<double, kHiddenDim> hidden{};
    std::array<double, kActionDim> mean{};
};

inline PolicyForward policy_forward(const PolicyParams& params,
                                    const std::array<double, kObsDim>& obs) {
    PolicyForward f;
    for (int h = 0; h < kHiddenDim; ++h) {
        double z = params.b1[static_cast<std::size_t>(h)];
        for (int o = 0; o < kObsDim; ++o)
            z += params.w1[static_cast<std::size_t>(h * kObsDim + o)] *
                 obs[static_cast<std::size_t>(o)];
        f.hidden[static_cast<std::size_t>(h)] = std::tanh(z);
    }
    for (int a = 0; a < kActionDim; ++a) {
        double z = params.b2[static_cast<std::size_t>(a)];
        for (int h = 0; h < kHiddenDim; ++h)
            z += params.w2[static_cast<std::size_t>(a * kHiddenDim + h)] *
                 f.hidden[static_cast<std::size_t>(h)];
        f.mean[static_cast<std::size_t>(a)] = z;
    }
    return f;
}

// Diagonal-Gaussian log density of the raw (pre-clamp) action.
inline double policy_log_prob(const PolicyParams& params, const std::array<double, kObsDim>& obs,
                              const Vec2& raw_action) {
    const auto f = policy_forward(params, obs);
    const std::array<double, kActionDim> raw{raw_action.x, raw_action.y};
    double lp = 0.0;
    for (int a = 0; a < kActionDim; ++a) {
        const double log_std = params.log_std[static_cast<std::size_t>(a)];
        const double std_dev = std::exp(log_std);
        const double z = (raw[static_cast<std::size_t>(a)] - f.mean[static_cast<std::size_t>(a)]) /
                         std_dev;
        lp += -0.5 * z * z - log_std - 0.5 * std::log(2.0 * std::numbers::pi);
    }
    return lp;
}

struct ActionSample {
    Vec2 action;      // emitted, clamped to [-1, 1]
    Vec2 raw_action;  // pre-clamp Gaussian sample (or the mean)
    double log_prob;  // density at raw_action
};

inline ActionSample policy_act(const PolicyParams& params, const std::array<double, kObsDim>& obs,
                               Rng& rng, bool deterministic = false) {
    for (const double v : obs)
        if (!std::isfinite(v))
            throw std::invalid_argument("policy_act: non-finite observation");

    const auto f = policy_forward(params, obs);
    Vec2 raw{f.mean[0], f.mean[1]};
    if (!deterministic) {
        raw.x += std::exp(params.log_std[0]) * rng.normal();
        raw.y += std::exp(params.log_std[1]) * rng.normal();
    }
    ActionSample sample;
    sample.raw_action = raw;
    sample.action = clamp_components(raw, -1.0, 1.0);
    sample.log_prob = policy_log_prob(params, obs, raw);
    return sample;
}

// Accumulates coef * d(log pi(raw | obs))/d(params) into grad. grad has the
// same shape as PolicyParams.
inline void accumulate_log_prob_gradient(const PolicyParams& params,
                                         const std::array<double, kObsDim>& obs,
                                         const Vec2& raw_action, double coef,
                                         PolicyParams& grad) {
    const auto f = policy_forward(params, obs);
    const std::array<double, kActionDim> raw{raw_action.x, raw_action.y};

    std::array<double, kActionDim> d_mean{};
    for (int a = 0; a < kActionDim; ++a) {
        const double std_dev = std::exp(params.log_std[static_cast<std::size_t>(a)]);
        const double diff = raw[static_cast<std::size_t>(a)] -
                            f.mean[static_cast<std::size_t>(a)];
        d_mean[static_cast<std::size_t>(a)] = diff / (std_dev * std_dev);
        // d logpi / d log_std = z^2 - 1 with z = diff / std
        const double z = diff / std_dev;
        grad.log_std[static_cast<std::size_t>(a)] += coef * (z * z - 1.0);
    }

    std::array<double, kHiddenDim> d_hidden{};
    for (int a = 0; a < kActionDim; ++a) {
        grad.b2[static_cast<std::size_t>(a)] += coef * d_mean[static_cast<std::size_t>(a)];
        for (int h = 0; h < kHiddenDim; ++h) {
            grad.w2[static_cast<std::size_t>(a * kHiddenDim + h)] +=
                coef * d_mean[static_cast<std::size_t>(a)] * f.hidden[static_cast<std::size_t>(h)];
            d_hidden[static_cast<std::size_t>(h)] +=
                d_mean[static_cast<std::size_t>(a)] *
                params.w2[static_cast<std::size_t>(a * kHiddenDim + h)];
        }
    }

    for (int h = 0; h < kHiddenDim; ++h) {
        const double hidden = f.hidden[static_cast<std::size_t>(h)];
        const double d_z = d_hidden[static_cast<std::size_t>(h)] * (1.0 - hidden * hidden);
        grad.b1[static_cast<std::size_t>(h)] += coef * d_z;
        for (int o = 0; o < kObsDim; ++o)
            grad.w1[static_cast<std::size_t>(h * kObsDim + o)] +=
                coef * d_z * obs[static_cast<std::size_t>(o)];
    }
}

}  // namespace ccmarl
