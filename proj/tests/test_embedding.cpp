#include <catch_amalgamated.hpp>

#include "ccmarl/embedding.hpp"
#include "ccmarl/synth.hpp"

using namespace ccmarl;

TEST_CASE("manifold point count is n - (E-1)*tau") {
    TimeSeries series(std::vector<double>(10, 0.0));
    for (int i = 0; i < 10; ++i) series.values[static_cast<std::size_t>(i)] = i;
    const auto manifold = delay_embed(series, {3, 2, 0});
    REQUIRE(manifold.size() == 6);
}

TEST_CASE("E=1 is the identity embedding") {
    const TimeSeries series({3, 1, 4, 1, 5});
    const auto manifold = delay_embed(series, {1, 1, 0});
    REQUIRE(manifold.size() == 5);
    for (int i = 0; i < 5; ++i) {
        REQUIRE(manifold.point(i)[0] == series[static_cast<std::size_t>(i)]);
        REQUIRE(manifold.time_index[static_cast<std::size_t>(i)] == i);
    }
}

TEST_CASE("coordinates are most-recent-first") {
    const TimeSeries series({0, 1, 2, 3, 4});
    const auto manifold = delay_embed(series, {2, 1, 0});
    REQUIRE(manifold.size() == 4);
    REQUIRE(manifold.point(0)[0] == 1.0);
    REQUIRE(manifold.point(0)[1] == 0.0);
    REQUIRE(manifold.time_index[0] == 1);
    REQUIRE(manifold.point(3)[0] == 4.0);
    REQUIRE(manifold.point(3)[1] == 3.0);
    REQUIRE(manifold.time_index[3] == 4);
}

TEST_CASE("too-short series names the required minimum") {
    const TimeSeries series({1, 2, 3, 4, 5});
    try {
        delay_embed(series, {3, 2, 0});
        FAIL("expected invalid_argument");
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        REQUIRE(msg.find("n=5") != std::string::npos);
        REQUIRE(msg.find(std::to_string(EmbeddingParams{3, 2, 0}.min_series_length())) !=
                std::string::npos);
    }
}

TEST_CASE("invalid embedding parameters are rejected") {
    const TimeSeries series({1, 2, 3, 4, 5, 6, 7, 8});
    REQUIRE_THROWS_AS(delay_embed(series, {0, 1, 0}), std::invalid_argument);
    REQUIRE_THROWS_AS(delay_embed(series, {2, 0, 0}), std::invalid_argument);
    REQUIRE_THROWS_AS(delay_embed(series, {2, 1, -1}), std::invalid_argument);
}

TEST_CASE("point count invariant holds across parameter grid") {
    const auto series = signal_series(SignalKind::random_walk, 200, 5);
    for (int E = 1; E <= 5; ++E) {
        for (int tau = 1; tau <= 4; ++tau) {
            const EmbeddingParams params{E, tau, 0};
            if (200 < params.min_series_length()) continue;
            const auto manifold = delay_embed(series, params);
            REQUIRE(manifold.size() == 200 - (E - 1) * tau);
            REQUIRE(manifold.series_length() == 200);
            for (int i = 1; i < manifold.size(); ++i)
                REQUIRE(manifold.time_index[static_cast<std::size_t>(i)] >
                        manifold.time_index[static_cast<std::size_t>(i - 1)]);
        }
    }
}
