#include <doctest.h>

#include <cmath>

#include "rankint/errors.hpp"
#include "rankint/numerics.hpp"
#include "rankint/sweeps.hpp"
#include "support.hpp"

using namespace rankint;

TEST_SUITE("sweeps") {

TEST_CASE("rank switching") {
    const auto cfg = testing::single_sm(4, 4, 4, 10.0, OwnMode::Beamforming);
    CHECK(designated_rank(cfg) == 4);
    const auto one = with_interferer_rank(cfg, 0, 1);
    CHECK(one.interferers[0].technique == Technique::Beamforming);
    CHECK(with_interferer_rank(cfg, 0, 3).interferers[0].technique == Technique::SpatialMultiplexing);
    CHECK_THROWS_AS(designated_rank(one), InvalidArgument);
    CHECK_THROWS_AS(designated_rank(testing::noise_only(2, 2, 15.0, OwnMode::Beamforming)), InvalidArgument);
    CHECK_THROWS_AS(with_interferer_rank(cfg, 0, 5), InvalidArgument);
    CHECK_THROWS_AS(with_interferer_rank(cfg, 1, 2), InvalidArgument);
}

TEST_CASE("gain definition") {
    const auto cfg = testing::single_sm(2, 2, 2, 0.0, OwnMode::Beamforming);
    const auto g = rank_gain(cfg);
    const double low = AnalyticModel(with_interferer_rank(cfg, 0, 1)).threshold(0.01);
    const double high = AnalyticModel(cfg).threshold(0.01);
    CHECK(g.gamma0_rank1_db == doctest::Approx(linear_to_db(low)));
    CHECK(g.gain_db == doctest::Approx(linear_to_db(high) - linear_to_db(low)));
    CHECK(g.gain_db > 0.25);
    CHECK(g.gain_db < 0.55);
}

TEST_CASE("beamforming gains grow with INR") {
    const auto pts = sweep_inr(testing::single_sm(4, 4, 4, 0.0, OwnMode::Beamforming), make_grid(0.0, 15.0, 1.0));
    REQUIRE(pts.size() == 16);
    for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i].gain_db > pts[i - 1].gain_db);
    for (const auto& p : pts)
        if (p.x >= 6.0) CHECK(p.gain_db > 2.0);
}

TEST_CASE("gain is flat in SNR") {
    for (auto mode : {OwnMode::Beamforming, OwnMode::Ostbc}) {
        const auto pts = sweep_snr(testing::single_sm(2, 2, 2, 15.0, mode), {5, 10, 15, 20, 25});
        double lo = 1e9, hi = -1e9;
        for (const auto& p : pts) {
            lo = std::min(lo, p.gain_db);
            hi = std::max(hi, p.gain_db);
        }
        CHECK(hi - lo < 0.1);
    }
}

TEST_CASE("constant total interference") {
    const auto cfg = testing::single_sm(2, 2, 2, 15.0, OwnMode::Beamforming);
    const auto split = split_interference(cfg, 4, 15.0);
    REQUIRE(split.interferers.size() == 4);
    double total = 0.0;
    for (std::size_t i = 0; i < 4; ++i) total += split.interferer_power(i);
    CHECK(total == doctest::Approx(db_to_linear(15.0)).epsilon(1e-12));
    CHECK_THROWS_AS(split_interference(cfg, 0, 15.0), InvalidArgument);

    for (int n : {2, 4}) {
        const auto pts = sweep_num_interferers(testing::single_sm(n, n, n, 15.0, OwnMode::Beamforming),
                                               {1, 2, 3, 4, 5, 6}, 15.0);
        for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i].gain_db <= pts[i - 1].gain_db);
        CHECK(pts.front().x == 1.0);
    }
}

TEST_CASE("rank-1 and rank-r outage curves cross well above 0.1") {
    for (auto [nr, nt, layers] : {std::tuple{2, 2, 2}, {4, 2, 2}, {4, 4, 4}}) {
        const auto cfg = testing::single_sm(nr, nt, layers, 10.0, OwnMode::Beamforming);
        const AnalyticModel low(with_interferer_rank(cfg, 0, 1));
        const AnalyticModel high(cfg);
        const auto cross = find_crossings(low, high, make_grid(-20.0, 30.0, 0.25));
        REQUIRE(cross.size() == 1);
        CHECK(cross[0].outage > 0.1);
        const double g = db_to_linear(cross[0].gamma0_db);
        CHECK(std::abs(low.outage(g) - high.outage(g)) < 1e-8);
    }
}

TEST_CASE("identical curves never cross") {
    const AnalyticModel m(reference_scenario(OwnMode::Beamforming));
    CHECK(find_crossings(m, m, make_grid(-10.0, 25.0, 0.5)).empty());
}

}  // TEST_SUITE
