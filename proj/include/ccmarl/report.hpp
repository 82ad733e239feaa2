#pragma once

// Cross-mapping report on external data: reads two named columns from a
// comma-separated file, runs the skill curve in both directions, and writes
// a JSON report. Direction naming follows the library convention: skill of
// "manifold a -> target b" measures the influence of b on a.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ccmarl/ccm.hpp"
#include "ccmarl/config.hpp"
#include "ccmarl/csv.hpp"

namespace ccmarl {

// Library-size ladder used when the caller does not pin one: roughly
// m/10, m/4, m/2, m, clamped to the valid range.
inline std::vector<int> default_library_ladder(int manifold_size, int E) {
    const int lo = E + 2;
    std::vector<int> ladder{manifold_size / 10, manifold_size / 4, manifold_size / 2,
                            manifold_size};
    for (int& L : ladder) L = std::clamp(L, lo, manifold_size);
    std::sort(ladder.begin(), ladder.end());
    ladder.erase(std::unique(ladder.begin(), ladder.end()), ladder.end());
    return ladder;
}

inline nlohmann::json ccm_direction_json(const std::string& source, const std::string& target,
                                         const CcmResult& result) {
    return nlohmann::json{{"source_manifold", source},
                          {"target", target},
                          {"library_sizes", result.library_sizes},
                          {"skills", result.skills},
                          {"score", result.score},
                          {"convergence_delta", result.convergence_delta},
                          {"degenerate", result.degenerate}};
}

inline nlohmann::json ccm_report(const std::string& input_path, const std::string& col_a,
                                 const std::string& col_b, const CcmConfig& ccm,
                                 std::vector<int> library_sizes, std::uint64_t seed,
                                 const std::string& output_path) {
    const CsvTable table = read_csv(input_path);
    const TimeSeries a(table.numeric_column(col_a));
    const TimeSeries b(table.numeric_column(col_b));

    const EmbeddingParams& params = ccm.embedding;
    params.validate();
    const int n = static_cast<int>(a.size());
    if (n < params.min_series_length())
        throw std::invalid_argument("ccm_report: series too short: n=" + std::to_string(n) +
                                    ", need at least " +
                                    std::to_string(params.min_series_length()));
    const int m = n - (params.E - 1) * params.tau;
    if (library_sizes.empty()) library_sizes = default_library_ladder(m, params.E);

    Rng rng_ab(derive_seed(seed, 0));
    Rng rng_ba(derive_seed(seed, 1));
    const CcmResult ab = ccm_curve(a, b, params, library_sizes, ccm.n_draws, rng_ab);
    const CcmResult ba = ccm_curve(b, a, params, library_sizes, ccm.n_draws, rng_ba);

    nlohmann::json report{
        {"input", input_path},
        {"columns", {col_a, col_b}},
        {"params",
         {{"E", params.E},
          {"tau", params.tau},
          {"theiler", params.theiler},
          {"n_draws", ccm.n_draws},
          {"library_sizes", library_sizes},
          {"seed", seed}}},
        {"directions",
         {ccm_direction_json(col_a, col_b, ab), ccm_direction_json(col_b, col_a, ba)}}};

    if (!output_path.empty()) {
        std::ofstream out(output_path);
        if (!out) throw std::runtime_error("ccm_report: cannot write '" + output_path + "'");
        out << report.dump(2) << '\n';
    }
    return report;
}

}  // namespace ccmarl
