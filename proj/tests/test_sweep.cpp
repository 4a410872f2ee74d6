// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include <catch_amalgamated.hpp>

#include "rfvlc/sweep.hpp"

using Catch::Matchers::WithinAbs;
using namespace rfvlc;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    for (std::string l; std::getline(ss, l);) {
        if (!l.empty() && l.back() == '\r') l.pop_back();
        out.push_back(l);
    }
    return out;
}

}  // namespace

TEST_CASE("Sweep specifications parse and validate", "[sweep]") {
    const SweepSpec s = parse_sweep("tx_snr_db:0:200:5");
    CHECK(s.variable == SweepVariable::tx_snr_db);
    CHECK(s.grid().size() == 41);
    CHECK(s.grid().back() == 200.0);
    CHECK(parse_sweep("v:0:10:0.25").grid().size() == 41);
    CHECK(parse_sweep("d_rd:10:20:10").variable == SweepVariable::d_rd);
    CHECK_THROWS_AS(parse_sweep("snr:0:1:1"), ConfigError);
    CHECK_THROWS_AS(parse_sweep("v:0:1"), ConfigError);
    CHECK_THROWS_AS(parse_sweep("v:a:1:1"), ConfigError);

    SweepSpec bad = parse_sweep("v:2:1:1");
    bad.modes = {Mode::exact};
    CHECK_THROWS_AS(validate(bad), ConfigError);
    bad = parse_sweep("v:0:1:0");
    bad.modes = {Mode::exact};
    CHECK_THROWS_AS(validate(bad), ConfigError);
    bad = parse_sweep("v:0:1:1");
    CHECK_THROWS_AS(validate(bad), ConfigError);
}

TEST_CASE("Mode lists parse", "[sweep]") {
    const auto m = parse_modes("exact,asymp_a,asymp_b,asymp_c,rf_rf,mc,reduction");
    CHECK(m.size() == 7);
    CHECK(m.front() == Mode::exact);
    CHECK(m.back() == Mode::reduction);
    CHECK_THROWS_AS(parse_modes("exact,bogus"), ConfigError);
    CHECK_THROWS_AS(parse_modes(""), ConfigError);
    for (const auto& [mode, name] : kModeNames) CHECK(parse_mode(name) == mode);
}

TEST_CASE("CSV layout", "[sweep][csv]") {
    SweepSpec spec = parse_sweep("tx_snr_db:100:120:10");
    spec.modes = {Mode::exact, Mode::mc};
    RunSettings settings;
    settings.mc_samples = 20'000;
    const auto rows = evaluate_sweep(baseline_config(), spec, {ItcCase::case1, ItcCase::case4}, settings);
    REQUIRE(rows.size() == 3 * 2 * 2);
    std::ostringstream out;
    write_csv(out, rows);
    const std::string text = out.str();
    CHECK(text.find("\r\n") != std::string::npos);
    const auto l = lines(text);
    REQUIRE(l.size() == rows.size() + 1);
    CHECK(l[0] == "x,mode,case,value,std_error,n_samples,seed");
    CHECK(l[1].rfind("100,exact,1,", 0) == 0);
    CHECK(l[1].ends_with(",,,"));  // analytic rows leave the Monte Carlo columns empty
    for (const auto& line : l) CHECK(std::count(line.begin(), line.end(), ',') == 6);
    CHECK(l[2].rfind("100,mc,1,", 0) == 0);
    CHECK(l[2].ends_with(",20000,12648430"));  // default seed 0xC0FFEE
    CHECK(l[3].rfind("100,exact,4,", 0) == 0);
    CHECK(l[5].rfind("110,exact,1,", 0) == 0);
    double prev = -1.0;
    for (const auto& r : rows) {
        CHECK(r.x >= prev);
        prev = r.x;
    }
}

TEST_CASE("Probabilities stay in the unit interval for every analytic mode", "[sweep]") {
    SweepSpec spec = parse_sweep("tx_snr_db:0:200:10");
    spec.modes = {Mode::exact, Mode::asymp_a, Mode::asymp_b, Mode::asymp_c, Mode::rf_rf};
    RunConfig base = baseline_config();
    for (double eps : {0.0, 0.01, 0.5}) {
        apply_csi_err_var(base.scenario, eps);
        const auto rows = evaluate_sweep(base, spec, {ItcCase::case1, ItcCase::case2, ItcCase::case3, ItcCase::case4},
                                         RunSettings{});
        for (const auto& r : rows) {
            REQUIRE(is_probability(r.mode));
            REQUIRE(r.value >= 0.0);
            REQUIRE(r.value <= 1.0);
        }
    }
}

TEST_CASE("Sweep variables move the intended knob", "[sweep]") {
    RunConfig cfg = baseline_config();
    apply_sweep_value(cfg, SweepVariable::d_rd, 20.0);
    CHECK(cfg.scenario.rd_vlc.distance == 20.0);
    CHECK(cfg.scenario.rd_rf.distance == 20.0);
    apply_sweep_value(cfg, SweepVariable::k_shape_db, 5.0);
    CHECK_THAT(cfg.scenario.rd_vlc.turbulence.shape_db(), WithinAbs(5.0, 1e-12));
    apply_sweep_value(cfg, SweepVariable::csi_err_var, 0.1);
    CHECK(cfg.scenario.sr.csi_err_var == 0.1);
    apply_sweep_value(cfg, SweepVariable::itc_db, 25.0);
    CHECK(cfg.itc_db == 25.0);
    apply_sweep_value(cfg, SweepVariable::v, 4.0);
    CHECK(cfg.query.v == 4.0);
    CHECK_THROWS_AS(apply_sweep_value(cfg, SweepVariable::d_rd, -1.0), ConfigError);
}

TEST_CASE("Sweeps are byte-identical across reruns and thread counts", "[sweep][determinism]") {
    const auto dir = std::filesystem::temp_directory_path() / "rfvlc_sweep_test";
    std::filesystem::remove_all(dir);
    SweepSpec spec = parse_sweep("tx_snr_db:120:160:10");
    spec.modes = {Mode::exact, Mode::mc, Mode::throughput, Mode::ergodic_mc};
    RunSettings serial;
    serial.mc_samples = 20'000;
    serial.seed = 1;
    RunSettings parallel = serial;
    parallel.threads = 4;
    std::filesystem::create_directories(dir);
    run_sweep(baseline_config(), spec, dir / "a.csv", serial);
    run_sweep(baseline_config(), spec, dir / "b.csv", parallel);
    run_sweep(baseline_config(), spec, dir / "c.csv", serial);
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
    CHECK(slurp(dir / "a.csv") == slurp(dir / "c.csv"));
    CHECK_THROWS(run_sweep(baseline_config(), spec, dir / "missing" / "x.csv", serial));
    std::filesystem::remove_all(dir);
}

TEST_CASE("Presets expand into the documented series", "[sweep][preset]") {
    const RunConfig base = baseline_config();
    CHECK(preset_series("fig2", base).size() == 2);
    CHECK(preset_series("fig3", base).size() == 6);
    CHECK(preset_series("fig4", base).size() == 6);
    CHECK(preset_series("fig5", base).size() == 6);
    CHECK(preset_series("fig6", base).size() == 12);
    CHECK_THROWS_AS(preset_series("fig7", base), ConfigError);

    const auto fig2 = preset_series("fig2", base);
    CHECK(fig2[0].label == "d10");
    CHECK(fig2[1].config.scenario.rd_vlc.distance == 20.0);
    CHECK(fig2[0].cases.size() == 4);
    CHECK(fig2[0].sweep.grid().size() == 41);

    const auto fig4 = preset_series("fig4", base);
    CHECK(fig4[3].label == "k10_eps0");
    CHECK(fig4[3].sweep.variable == SweepVariable::v);
    CHECK_THAT(fig4[3].config.scenario.rd_vlc.turbulence.shape_db(), WithinAbs(10.0, 1e-12));
}

TEST_CASE("Reduction mode reports dB relative to the outage", "[sweep]") {
    RunConfig base = baseline_config();
    apply_tx_snr_db(base.scenario, 150.0);
    const SweepRow r = evaluate_mode(base.scenario, 2.0, Mode::reduction, RunSettings{});
    const double p = outage_probability(base.scenario, 2.0);
    const double gap = rf_rf_outage(base.scenario, 2.0) - p;
    CHECK_THAT(r.value, WithinAbs(10.0 * std::log10(gap / p), 1e-9));
    CHECK_FALSE(r.mc.has_value());
}
