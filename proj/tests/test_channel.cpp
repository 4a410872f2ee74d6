// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <catch_amalgamated.hpp>

#include "rfvlc/channel.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace rfvlc;

TEST_CASE("Power clip follows min(P_max, K / |h_iU|^2)", "[channel]") {
    PowerConstraint c;
    c.p_max = 10.0;
    c.itc = 2.0;
    c.distance = 2.0;
    c.path_loss_exp = 2.0;  // K = 8
    CHECK(effective_tx_power(c, 0.4) == 10.0);
    CHECK_THAT(effective_tx_power(c, 2.0), WithinRel(4.0, 1e-15));
    CHECK(effective_tx_power(c, 0.0) == 10.0);
    c.constrained = false;
    CHECK(effective_tx_power(c, 2.0) == 10.0);
    c.constrained = true;
    for (double h = 0.01; h < 100.0; h *= 1.3) REQUIRE(effective_tx_power(c, h) <= c.p_max);
}

TEST_CASE("Lambertian gain at the baseline geometry", "[channel][vlc]") {
    VlcLink link;
    link.distance = 10.0;
    CHECK_THAT(lambertian_gain(link), WithinRel(3.183098861837907e-7, 1e-14));
    CHECK_THAT(linear_to_db(lambertian_gain(link)), WithinAbs(-65.0, 0.1));
    link.distance = 20.0;
    CHECK_THAT(lambertian_gain(link), WithinRel(7.957747154594767e-8, 1e-14));
    CHECK_THAT(linear_to_db(lambertian_gain(link)), WithinAbs(-71.0, 0.1));
}

TEST_CASE("Lambertian gain vanishes outside the field of view", "[channel][vlc]") {
    VlcLink link;
    link.incidence_angle = link.fov;
    CHECK(lambertian_gain(link) == 0.0);
    link.incidence_angle = std::nextafter(link.fov, 0.0);
    CHECK(lambertian_gain(link) > 0.0);
    link.incidence_angle = deg_to_rad(30.0);
    link.irradiance_angle = deg_to_rad(30.0);
    const double aligned = 2.0 * 1e-4 / (2.0 * std::numbers::pi * 100.0);
    CHECK_THAT(lambertian_gain(link), WithinRel(aligned * 0.75, 1e-14));
}

TEST_CASE("Photodiode noise variances with the tabulated receiver", "[channel][vlc]") {
    const VlcLink link;
    CHECK_THAT(shot_noise_variance(link.noise, link.responsivity), WithinRel(1.90889732881296e-14, 1e-12));
    CHECK_THAT(thermal_noise_variance(link.noise, link.pd_area), WithinRel(3.110751123719291e-13, 1e-12));
    CHECK_THAT(vlc_noise_variance(link), WithinRel(3.301640856600587e-13, 1e-12));
}

TEST_CASE("Noise variance vanishes with the data rate", "[channel][vlc]") {
    VlcLink link;
    double prev = vlc_noise_variance(link);
    for (double rb = 1e8; rb > 1e-3; rb /= 10.0) {
        link.noise.data_rate = rb;
        const double n = vlc_noise_variance(link);
        REQUIRE(n < prev);
        prev = n;
    }
    link.noise.data_rate = 0.0;
    CHECK(vlc_noise_variance(link) == 0.0);
}

TEST_CASE("RF SINR is bounded by the estimation error", "[channel][rf]") {
    RfLink link;
    link.distance = 3.0;
    link.csi_err_var = 0.05;
    RandomStream rng(2024);
    for (int i = 0; i < 10000; ++i) {
        const double h = sample_exponential(link.rate_est, rng);
        for (double p : {1e-3, 1.0, 1e6, 1e15}) {
            const double sinr = rf_sinr(link, p, h);
            REQUIRE(sinr >= 0.0);
            REQUIRE(sinr < h / link.csi_err_var);
        }
    }
    // With perfect CSI the SINR is the plain SNR.
    link.csi_err_var = 0.0;
    CHECK_THAT(rf_sinr(link, 5.0, 0.3), WithinRel(1.5 / std::pow(3.0, 2.7), 1e-14));
}

TEST_CASE("Mean RF SINR with perfect CSI", "[channel][rf]") {
    RfLink link;
    link.distance = 2.0;
    link.rate_est = 0.5;
    RandomStream rng(5);
    constexpr int n = 200000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g = draw_rf_sinr(link, 10.0, rng);
        sum += g;
        sum_sq += g * g;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum_sq / n - mean * mean) / n);
    const double expected = 10.0 / link.rate_est / link.path_loss();
    CHECK_THAT(mean, WithinAbs(expected, 4.0 * se));
}

TEST_CASE("VLC SNR is bounded by the estimation error", "[channel][vlc]") {
    VlcLink link;
    link.csi_err_var = 0.01;
    link.turbulence = RicianParams::from_shape_db(5.0, 1.0);
    RandomStream rng(8);
    for (int i = 0; i < 10000; ++i) {
        const double g = sample_rician(link.turbulence, rng);
        for (double p : {1e-9, 1.0, 1e12}) {
            const double snr = vlc_snr(link, p, g);
            REQUIRE(snr >= 0.0);
            REQUIRE(snr < g * g / link.csi_err_var);
        }
    }
    link.csi_err_var = 0.0;
    const double ge = link.responsivity * lambertian_gain(link);
    CHECK_THAT(vlc_snr(link, 2.0, 1.5), WithinRel(ge * ge * 2.25 * 2.0 / vlc_noise_variance(link), 1e-14));
}

TEST_CASE("Mean VLC SNR follows the Rician second moment", "[channel][vlc]") {
    VlcLink link;
    link.turbulence = RicianParams::from_shape_db(3.0, 0.5);
    const double p_t = 1e3;
    RandomStream rng(31);
    constexpr int n = 200000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g = draw_vlc_snr(link, p_t, rng);
        sum += g;
        sum_sq += g * g;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum_sq / n - mean * mean) / n);
    const double second_moment = link.turbulence.s * link.turbulence.s + 2.0 * link.turbulence.n;
    const double ge = link.responsivity * lambertian_gain(link);
    CHECK_THAT(mean, WithinAbs(ge * ge * p_t * second_moment / vlc_noise_variance(link), 4.0 * se));
}

TEST_CASE("dB helpers round-trip", "[channel]") {
    for (double db = -80.0; db <= 80.0; db += 7.5) CHECK_THAT(linear_to_db(db_to_linear(db)), WithinAbs(db, 1e-12));
    CHECK_THAT(deg_to_rad(180.0), WithinRel(std::numbers::pi, 1e-15));
}
