#pragma once

// Synthetic series with known causal structure, used as ground truth when
// validating the cross-mapping engine. The coupled logistic pair is the
// canonical benchmark: with beta_yx > 0 and beta_xy = 0, X drives Y and the
// influence is recoverable from Y's manifold but not from X's.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ccmarl/rng.hpp"
#include "ccmarl/time_series.hpp"

namespace ccmarl {

struct LogisticPairParams {
    double r_x = 3.8;       // growth rate of X, in (0, 4]
    double r_y = 3.8;       // growth rate of Y, in (0, 4]
    double beta_xy = 0.0;   // coupling of Y onto X
    double beta_yx = 0.32;  // coupling of X onto Y
    double x0 = 0.4;        // initial values in (0, 1)
    double y0 = 0.2;
    int n = 1000;           // samples returned
    int burn_in = 300;      // discarded prefix

    void validate() const {
        if (r_x <= 0.0 || r_x > 4.0 || r_y <= 0.0 || r_y > 4.0)
            throw std::invalid_argument("LogisticPairParams: growth rates must be in (0, 4]");
        if (beta_xy < 0.0 || beta_yx < 0.0)
            throw std::invalid_argument("LogisticPairParams: couplings must be >= 0");
        if (x0 <= 0.0 || x0 >= 1.0 || y0 <= 0.0 || y0 >= 1.0)
            throw std::invalid_argument("LogisticPairParams: initial values must be in (0, 1)");
        if (n < 1) throw std::invalid_argument("LogisticPairParams: n must be >= 1");
        if (burn_in < 0) throw std::invalid_argument("LogisticPairParams: burn_in must be >= 0");
    }
};

// x(t+1) = x(t) (r_x - r_x x(t) - beta_xy y(t))
// y(t+1) = y(t) (r_y - r_y y(t) - beta_yx x(t))
// The seed shifts both initial conditions by one shared uniform draw in
// [-1e-3, 1e-3], so identical (x0, y0) stay identical across the pair.
inline std::pair<TimeSeries, TimeSeries> coupled_logistic(const LogisticPairParams& params,
                                                          std::uint64_t seed) {
    params.validate();
    Rng rng(seed);
    const double jitter = rng.uniform(-1e-3, 1e-3);
    double x = std::min(std::max(params.x0 + jitter, 1e-6), 1.0 - 1e-6);
    double y = std::min(std::max(params.y0 + jitter, 1e-6), 1.0 - 1e-6);

    const int total = params.burn_in + params.n;
    std::vector<double> xs, ys;
    xs.reserve(static_cast<std::size_t>(params.n));
    ys.reserve(static_cast<std::size_t>(params.n));
    for (int t = 0; t < total; ++t) {
        if (t >= params.burn_in) {
            xs.push_back(x);
            ys.push_back(y);
        }
        const double nx = x * (params.r_x - params.r_x * x - params.beta_xy * y);
        const double ny = y * (params.r_y - params.r_y * y - params.beta_yx * x);
        if (!(nx >= 0.0 && nx <= 1.0) || !(ny >= 0.0 && ny <= 1.0))
            throw std::runtime_error("coupled_logistic: trajectory escaped [0, 1] at step " +
                                     std::to_string(t + 1));
        x = nx;
        y = ny;
    }
    return {TimeSeries(std::move(xs)), TimeSeries(std::move(ys))};
}

enum class SignalKind { gaussian_noise, sine, random_walk };

inline SignalKind signal_kind_from_string(const std::string& name) {
    if (name == "gaussian_noise") return SignalKind::gaussian_noise;
    if (name == "sine") return SignalKind::sine;
    if (name == "random_walk") return SignalKind::random_walk;
    throw std::invalid_argument("signal_series: unknown kind '" + name + "'");
}

// gaussian_noise: i.i.d. standard normal. sine: sin(2 pi f t). random_walk:
// cumulative sum of standard normal steps.
inline TimeSeries signal_series(SignalKind kind, int n, std::uint64_t seed,
                                double frequency = 0.01) {
    if (n < 1) throw std::invalid_argument("signal_series: n must be >= 1");
    Rng rng(seed);
    std::vector<double> values(static_cast<std::size_t>(n));
    switch (kind) {
        case SignalKind::gaussian_noise:
            for (auto& v : values) v = rng.normal();
            break;
        case SignalKind::sine:
            for (int t = 0; t < n; ++t)
                values[static_cast<std::size_t>(t)] =
                    std::sin(2.0 * std::numbers::pi * frequency * static_cast<double>(t));
            break;
        case SignalKind::random_walk: {
            double acc = 0.0;
            for (auto& v : values) {
                acc += rng.normal();
                v = acc;
            }
            break;
        }
    }
    return TimeSeries(std::move(values));
}

}  // namespace ccmarl
