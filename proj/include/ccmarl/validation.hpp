#pragma once

// Self-check battery against generators with known causal structure. Each
// check compares a measured value to a fixed threshold; the battery never
// throws on failure, it reports. The estimator-boundedness check accepts an
// alternative weight function so tests can verify the check catches a broken
// estimator.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ccmarl/ccm.hpp"
#include "ccmarl/csv.hpp"
#include "ccmarl/synth.hpp"

namespace ccmarl {

struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string comparator;  // ">=", ">", "<"
    std::string details;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool all_passed = true;
    std::string report_path;
};

namespace detail {

inline CheckResult make_check(const std::string& name, double measured, double threshold,
                              const std::string& comparator, const std::string& details) {
    CheckResult check{name, false, measured, threshold, comparator, details};
    if (comparator == ">=") check.passed = measured >= threshold;
    else if (comparator == ">") check.passed = measured > threshold;
    else check.passed = measured < threshold;
    return check;
}

}  // namespace detail

// Full-manifold library size for a series of length n under `params`.
inline int full_library_size(int n, const EmbeddingParams& params) {
    return n - (params.E - 1) * params.tau;
}

inline ValidationReport validate_suite(const std::filesystem::path& output_dir,
                                       std::uint64_t seed = 1,
                                       WeightFn weight_fn = &simplex_weights) {
    const EmbeddingParams params;  // E=3, tau=1, theiler=2
    ValidationReport report;

    // Self-prediction: a smooth series cross-maps itself almost perfectly.
    {
        const auto sine = signal_series(SignalKind::sine, 500, seed, 0.01);
        Rng rng(derive_seed(seed, 10));
        const auto score = ccm_score(sine, sine, params, full_library_size(500, params), 1, rng);
        report.checks.push_back(detail::make_check("self_prediction_sine", score.value, 0.99,
                                                   ">=", "sine, n=500, full library"));
    }
    {
        LogisticPairParams lp;
        lp.beta_yx = 0.0;
        const auto [x, y] = coupled_logistic(lp, seed);
        Rng rng(derive_seed(seed, 11));
        const auto score = ccm_score(x, x, params, full_library_size(lp.n, params), 1, rng);
        report.checks.push_back(detail::make_check("self_prediction_logistic", score.value, 0.99,
                                                   ">=", "logistic map, n=1000, full library"));
    }

    // Null control: independent noise shows no causal signal.
    {
        double total = 0.0;
        const int trials = 20;
        for (int s = 0; s < trials; ++s) {
            const auto x = signal_series(SignalKind::gaussian_noise, 1000,
                                         derive_seed(seed, 20, static_cast<std::uint64_t>(s)));
            const auto y = signal_series(SignalKind::gaussian_noise, 1000,
                                         derive_seed(seed, 21, static_cast<std::uint64_t>(s)));
            Rng rng(derive_seed(seed, 22, static_cast<std::uint64_t>(s)));
            total += std::abs(
                ccm_score(x, y, params, full_library_size(1000, params), 1, rng).value);
        }
        report.checks.push_back(detail::make_check("noise_null", total / trials, 0.1, "<",
                                                   "independent gaussian pairs, 20 seeds"));
    }

    // Directionality and convergence on the coupled logistic pair: X drives
    // Y, so Y's manifold recovers X but not the other way around, and the
    // recovery improves with library size.
    {
        const LogisticPairParams lp;  // beta_yx = 0.32, beta_xy = 0
        const int L_max = full_library_size(lp.n, params);
        const std::vector<int> ladder{100, L_max};
        double driven_sum = 0.0, gap_sum = 0.0, delta_sum = 0.0;
        const int trials = 10;
        for (int s = 0; s < trials; ++s) {
            const auto [x, y] = coupled_logistic(lp, derive_seed(seed, 30,
                                                                 static_cast<std::uint64_t>(s)));
            Rng rng_y(derive_seed(seed, 31, static_cast<std::uint64_t>(s)));
            Rng rng_x(derive_seed(seed, 32, static_cast<std::uint64_t>(s)));
            const auto from_y = ccm_curve(y, x, params, ladder, 32, rng_y);
            const auto from_x = ccm_curve(x, y, params, ladder, 32, rng_x);
            driven_sum += from_y.score;
            gap_sum += from_y.score - from_x.score;
            delta_sum += from_y.convergence_delta;
        }
        report.checks.push_back(detail::make_check("directionality_driven_to_driver",
                                                   driven_sum / trials, 0.8, ">",
                                                   "coupled logistic, 10 seeds, L=" +
                                                       std::to_string(L_max)));
        report.checks.push_back(detail::make_check("directionality_gap", gap_sum / trials, 0.3,
                                                   ">=", "driven minus driver direction"));
        report.checks.push_back(detail::make_check("convergence_delta", delta_sum / trials, 0.1,
                                                   ">",
                                                   "skill(L=" + std::to_string(L_max) +
                                                       ") - skill(L=100), causal direction"));
    }

    // Affine invariance: positive rescaling of both series leaves the score
    // unchanged.
    {
        const auto [x, y] = coupled_logistic(LogisticPairParams{}, derive_seed(seed, 40));
        std::vector<double> xs = x.values, ys = y.values;
        for (double& v : xs) v = 2.5 * v + 1.0;
        for (double& v : ys) v = 0.3 * v - 4.0;
        Rng rng_base(derive_seed(seed, 41));
        Rng rng_scaled(derive_seed(seed, 41));
        const auto base = ccm_score(x, y, params, 200, 8, rng_base);
        const auto scaled =
            ccm_score(TimeSeries(xs), TimeSeries(ys), params, 200, 8, rng_scaled);
        report.checks.push_back(detail::make_check("affine_invariance",
                                                   std::abs(base.value - scaled.value), 1e-9, "<",
                                                   "score(2.5x+1, 0.3y-4) vs score(x, y)"));
    }

    // Estimator boundedness: every cross-map estimate is a convex
    // combination of neighbor target values.
    {
        double max_violation = 0.0;
        for (int s = 0; s < 5; ++s) {
            const auto x = signal_series(SignalKind::random_walk, 200,
                                         derive_seed(seed, 50, static_cast<std::uint64_t>(s)));
            const auto y = signal_series(SignalKind::random_walk, 200,
                                         derive_seed(seed, 51, static_cast<std::uint64_t>(s)));
            const auto manifold = delay_embed(x, params);
            Rng rng(derive_seed(seed, 52, static_cast<std::uint64_t>(s)));
            const auto library = sample_without_replacement(manifold.size(), 60, rng);
            const auto result = cross_map(manifold, y, library, weight_fn);
            double lo = y.values[0], hi = y.values[0];
            for (const int idx : library) {
                const double v =
                    y.values[static_cast<std::size_t>(manifold.time_index[static_cast<std::size_t>(idx)])];
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            for (const double e : result.estimates)
                max_violation = std::max(max_violation, std::max(lo - e, e - hi));
        }
        report.checks.push_back(detail::make_check("estimator_boundedness", max_violation, 1e-12,
                                                   "<",
                                                   "estimates within library target range"));
    }

    for (const auto& check : report.checks) report.all_passed &= check.passed;

    std::filesystem::create_directories(output_dir);
    const std::filesystem::path path = output_dir / "validation_report.json";
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& check : report.checks)
        entries.push_back({{"name", check.name},
                           {"passed", check.passed},
                           {"measured", check.measured},
                           {"threshold", check.threshold},
                           {"comparator", check.comparator},
                           {"details", check.details}});
    std::ofstream out(path);
    if (!out) throw std::runtime_error("validate_suite: cannot write '" + path.string() + "'");
    out << nlohmann::json{{"all_passed", report.all_passed}, {"checks", entries}}.dump(2) << '\n';
    report.report_path = path.string();
    return report;
}

// Writes the oracle series as comma-separated files for use with the ccm
// report command; returns the file paths.
inline std::vector<std::string> emit_oracle_series(const std::filesystem::path& output_dir,
                                                   std::uint64_t seed = 1) {
    std::filesystem::create_directories(output_dir);
    std::vector<std::string> paths;

    {
        const auto [x, y] = coupled_logistic(LogisticPairParams{}, seed);
        const std::filesystem::path path = output_dir / "coupled_logistic.csv";
        std::ofstream out(path);
        out << "t,x,y\n";
        for (std::size_t t = 0; t < x.size(); ++t) {
            out << t << ',';
            format_double(out, x.values[t]);
            out << ',';
            format_double(out, y.values[t]);
            out << '\n';
        }
        paths.push_back(path.string());
    }
    {
        const auto a = signal_series(SignalKind::gaussian_noise, 1000, derive_seed(seed, 1));
        const auto b = signal_series(SignalKind::gaussian_noise, 1000, derive_seed(seed, 2));
        const std::filesystem::path path = output_dir / "independent_noise.csv";
        std::ofstream out(path);
        out << "t,a,b\n";
        for (std::size_t t = 0; t < a.size(); ++t) {
            out << t << ',';
            format_double(out, a.values[t]);
            out << ',';
            format_double(out, b.values[t]);
            out << '\n';
        }
        paths.push_back(path.string());
    }
    {
        const auto s = signal_series(SignalKind::sine, 500, seed, 0.01);
        const std::filesystem::path path = output_dir / "sine.csv";
        std::ofstream out(path);
        out << "t,s,s_copy\n";
        for (std::size_t t = 0; t < s.size(); ++t) {
            out << t << ',';
            format_double(out, s.values[t]);
            out << ',';
            format_double(out, s.values[t]);
            out << '\n';
        }
        paths.push_back(path.string());
    }
    return paths;
}

}  // namespace ccmarl
