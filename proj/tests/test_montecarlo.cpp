// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include <catch_amalgamated.hpp>

#include "rfvlc/config.hpp"
#include "rfvlc/montecarlo.hpp"
#include "support/random_scenario.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace rfvlc;

namespace {

Scenario baseline() { return baseline_config().scenario; }

Scenario with_csi(double eps, int c, double xi_db) {
    Scenario s = baseline();
    s.itc_case = itc_case_from_int(c);
    apply_csi_err_var(s, eps);
    apply_tx_snr_db(s, xi_db);
    return s;
}

}  // namespace

TEST_CASE("Estimates do not depend on the worker count", "[montecarlo][determinism]") {
    const Scenario s = with_csi(0.01, 1, 150.0);
    const McEstimate serial = simulate_outage(s, 2.0, 300'000, 42, 1);
    for (unsigned threads : {2u, 3u, 8u}) {
        const McEstimate parallel = simulate_outage(s, 2.0, 300'000, 42, threads);
        CHECK(parallel.estimate == serial.estimate);
        CHECK(parallel.std_error == serial.std_error);
    }
    const McEstimate rate1 = simulate_ergodic_rate(s, 200'000, 9, 1);
    const McEstimate rate4 = simulate_ergodic_rate(s, 200'000, 9, 4);
    CHECK(rate1.estimate == rate4.estimate);
    CHECK(rate1.std_error == rate4.std_error);
    CHECK(simulate_outage(s, 2.0, 300'000, 43).estimate != serial.estimate);
}

TEST_CASE("Estimate bookkeeping", "[montecarlo]") {
    const McEstimate e = simulate_outage(baseline(), 2.0, 100'000, 5);
    CHECK(e.n_samples == 100'000);
    CHECK(e.seed == 5);
    CHECK(e.estimate >= 0.0);
    CHECK(e.estimate <= 1.0);
    CHECK(e.std_error == std::sqrt(e.estimate * (1.0 - e.estimate) / 100'000.0));
    CHECK(e.wall_time >= 0.0);
    CHECK_THROWS_AS(simulate_outage(baseline(), 2.0, 9'999, 5), std::invalid_argument);
    CHECK_THROWS_AS(simulate_ergodic_rate(baseline(), 100, 5), std::invalid_argument);
}

TEST_CASE("Zero threshold never declares outage", "[montecarlo]") {
    for (int c = 1; c <= 4; ++c) {
        const Scenario s = with_csi(0.1, c, 30.0);
        CHECK(simulate_outage(s, 0.0, 50'000, 1).estimate == 0.0);
        CHECK(simulate_rf_rf_outage(s, 0.0, 50'000, 1).estimate == 0.0);
    }
}

TEST_CASE("RF/RF outage dominates the mixed outage trial by trial", "[montecarlo][crn]") {
    testing::ScenarioGenerator gen(3);
    for (int i = 0; i < 20; ++i) {
        const Scenario s = gen.next();
        const double v = gen.threshold();
        const TrialSampler sampler(s);
        RandomStream rng(77, i);
        for (int k = 0; k < 20'000; ++k) {
            const TrialSnrs t = sampler.draw(rng);
            REQUIRE(t.end_to_end_rf() <= t.end_to_end());
        }
        const OutageCounts c = count_outages(s, v, 50'000, 77);
        REQUIRE(c.rf_rf >= c.mixed);
    }
}

TEST_CASE("A blocked optical link reduces to the RF-only simulation", "[montecarlo]") {
    Scenario s = with_csi(0.01, 2, 140.0);
    s.rd_vlc.incidence_angle = s.rd_vlc.fov;
    const McEstimate mixed = simulate_outage(s, 2.0, 200'000, 11);
    const McEstimate rf = simulate_rf_rf_outage(s, 2.0, 200'000, 11);
    CHECK(mixed.estimate == rf.estimate);
}

TEST_CASE("Case 4 with perfect CSI and huge power never fails", "[montecarlo]") {
    const Scenario s = with_csi(0.0, 4, 250.0);
    CHECK(simulate_rf_rf_outage(s, 2.0, 100'000, 3).estimate == 0.0);
    CHECK(simulate_outage(s, 2.0, 100'000, 3).estimate == 0.0);
}

TEST_CASE("Doubling the trials shrinks the standard error by sqrt(2)", "[montecarlo]") {
    const Scenario s = with_csi(0.01, 1, 150.0);
    const McEstimate small = simulate_outage(s, 2.0, 200'000, 21);
    const McEstimate large = simulate_outage(s, 2.0, 400'000, 21);
    CHECK_THAT(small.std_error / large.std_error, WithinRel(std::numbers::sqrt2, 0.10));
}

TEST_CASE("Simulation agrees with the closed forms", "[montecarlo][oracle]") {
    for (int c = 1; c <= 4; ++c) {
        for (double eps : {0.0, 0.05}) {
            const Scenario s = with_csi(eps, c, 140.0);
            const McEstimate mixed = simulate_outage(s, 2.0, 1'000'000, 100 + c);
            const McEstimate rf = simulate_rf_rf_outage(s, 2.0, 1'000'000, 100 + c);
            const double p = outage_probability(s, 2.0);
            const double q = rf_rf_outage(s, 2.0);
            INFO("case " << c << ", csi " << eps);
            CHECK_THAT(mixed.estimate, WithinAbs(p, 3.0 * std::max(mixed.std_error, std::sqrt(p * (1 - p) / 1e6))));
            CHECK_THAT(rf.estimate, WithinAbs(q, 3.0 * std::max(rf.std_error, std::sqrt(q * (1 - q) / 1e6))));
        }
    }
}

TEST_CASE("Simulation tracks the closed form with Rician turbulence and tilt", "[montecarlo][oracle]") {
    Scenario s = with_csi(0.02, 2, 150.0);
    s.rd_vlc.turbulence = RicianParams::from_shape_db(8.0, 0.6);
    s.rd_vlc.incidence_angle = deg_to_rad(25.0);
    s.rd_vlc.irradiance_angle = deg_to_rad(10.0);
    for (double v : {0.5, 2.0, 6.0}) {
        const McEstimate e = simulate_outage(s, v, 1'000'000, 7);
        const double p = outage_probability(s, v);
        INFO("v = " << v);
        CHECK_THAT(e.estimate, WithinAbs(p, 3.0 * std::max(e.std_error, std::sqrt(p * (1 - p) / 1e6))));
    }
}

TEST_CASE("Ergodic rate of the RF-only link has a closed form", "[montecarlo][ergodic]") {
    // No clip, perfect CSI and no VLC: gamma^DF = min of two exponentials,
    // itself exponential with rate r, and E[log2(1 + X)] = e^r E1(r) / ln 2.
    Scenario s = with_csi(0.0, 4, 0.0);
    s.rd_vlc.incidence_angle = s.rd_vlc.fov;
    s.su.p_max = 2e3;
    s.ru.p_max = 5e2;
    const double r = s.sr.rate_est * s.sr.path_loss() * s.sr.noise_var / s.p_s() +
                     s.rd_rf.rate_est * s.rd_rf.path_loss() * s.rd_rf.noise_var / s.p_r();
    const double e1 = -std::expint(-r);  // E1(r) = -Ei(-r)
    const double expected = 0.5 * std::exp(r) * e1 / std::numbers::ln2;
    const McEstimate e = simulate_ergodic_rate(s, 1'000'000, 17);
    CHECK(expected > 0.0);
    CHECK_THAT(e.estimate, WithinAbs(expected, 4.0 * e.std_error));
}

TEST_CASE("Ergodic rate vanishes with the transmit power", "[montecarlo][ergodic]") {
    Scenario s = baseline();
    s.su.p_max = s.ru.p_max = s.p_t = 1e-300;
    CHECK(simulate_ergodic_rate(s, 20'000, 1).estimate == 0.0);
}

TEST_CASE("Ergodic rate is stable across seeds", "[montecarlo][ergodic]") {
    const Scenario s = with_csi(0.01, 1, 140.0);
    const McEstimate a = simulate_ergodic_rate(s, 400'000, 1);
    const McEstimate b = simulate_ergodic_rate(s, 400'000, 2);
    CHECK(a.std_error > 0.0);
    CHECK_THAT(a.estimate, WithinAbs(b.estimate, 4.0 * std::hypot(a.std_error, b.std_error)));
}
