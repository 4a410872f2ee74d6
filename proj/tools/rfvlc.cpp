// SPDX-License-Identifier: Apache-2.0
//
// rfvlc: outage / throughput evaluation, sweeps, named presets and the
// closed-form vs. simulation gate.
//
// Exit codes: 0 success, 2 configuration or usage error, 3 a validation
// gate (validate, selftest) failed, 1 anything else.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "rfvlc/rfvlc.hpp"
#include "rfvlc/verify.hpp"

namespace {

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

constexpr int kExitConfig = 2;
constexpr int kExitGate = 3;

struct CommonOptions {
    std::string config;
    std::optional<int> itc_case;
    std::string modes;
    std::optional<std::uint64_t> mc_samples;
    std::optional<std::uint64_t> seed;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::string out;
};

void add_config_options(CLI::App& cmd, CommonOptions& o) {
    cmd.add_option("--config", o.config, "Scenario JSON file (defaults to the baseline scenario)")
        ->check(CLI::ExistingFile);
    cmd.add_option("--case", o.itc_case, "Network case 1-4")->check(CLI::Range(1, 4));
}

void add_run_options(CLI::App& cmd, CommonOptions& o) {
    cmd.add_option("--mc-samples", o.mc_samples, "Monte Carlo trials per point")->check(CLI::Range(10000ull, 1ull << 40));
    cmd.add_option("--seed", o.seed, "Monte Carlo seed (default 0xC0FFEE)");
    cmd.add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
}

rfvlc::RunConfig load(const CommonOptions& o) {
    rfvlc::RunConfig cfg = o.config.empty() ? rfvlc::baseline_config() : rfvlc::load_config(o.config);
    if (o.itc_case) cfg.scenario.itc_case = rfvlc::itc_case_from_int(*o.itc_case);
    return cfg;
}

rfvlc::RunSettings settings(const CommonOptions& o, std::uint64_t default_samples) {
    rfvlc::RunSettings s;
    s.mc_samples = o.mc_samples.value_or(default_samples);
    s.seed = o.seed;
    s.threads = o.threads;
    return s;
}

void emit(const std::vector<rfvlc::SweepRow>& rows, const std::string& out) {
    if (out.empty() || out == "-") {
        rfvlc::write_csv(std::cout, rows);
    } else {
        rfvlc::write_csv_file(out, rows);
        std::cerr << "wrote " << rows.size() << " rows to " << out << "\n";
    }
}

int run_eval(const CommonOptions& o, std::optional<double> v) {
    rfvlc::RunConfig cfg = load(o);
    if (v) rfvlc::apply_sweep_value(cfg, rfvlc::SweepVariable::v, *v);
    rfvlc::SweepSpec spec{rfvlc::SweepVariable::v, cfg.query.v, cfg.query.v, 1.0,
                          rfvlc::parse_modes(o.modes.empty() ? "exact,rf_rf,throughput" : o.modes)};
    emit(rfvlc::evaluate_sweep(cfg, spec, {cfg.scenario.itc_case}, settings(o, 100'000)), o.out);
    return 0;
}

int run_sweep_cmd(const CommonOptions& o, const std::string& sweep) {
    const rfvlc::RunConfig cfg = load(o);
    rfvlc::SweepSpec spec = rfvlc::parse_sweep(sweep);
    spec.modes = rfvlc::parse_modes(o.modes.empty() ? "exact" : o.modes);
    emit(rfvlc::evaluate_sweep(cfg, spec, {cfg.scenario.itc_case}, settings(o, 100'000)), o.out);
    return 0;
}

int run_preset_cmd(const CommonOptions& o, const std::string& name) {
    const rfvlc::RunConfig cfg = load(o);
    const std::vector<rfvlc::Mode> modes = o.modes.empty() ? std::vector<rfvlc::Mode>{} : rfvlc::parse_modes(o.modes);
    const std::filesystem::path dir = o.out.empty() ? std::filesystem::path(name) : std::filesystem::path(o.out);
    for (const auto& p : rfvlc::run_preset(name, cfg, dir, settings(o, 100'000), modes)) std::cout << p.string() << "\n";
    return 0;
}

int run_validate(const CommonOptions& o) {
    const rfvlc::RunConfig cfg = load(o);
    std::vector<rfvlc::ItcCase> cases;
    if (o.itc_case) cases.push_back(cfg.scenario.itc_case);
    else cases = {rfvlc::ItcCase::case1, rfvlc::ItcCase::case2, rfvlc::ItcCase::case3, rfvlc::ItcCase::case4};
    const auto s = settings(o, 1'000'000);
    const auto report = rfvlc::run_oracle_grid(cfg, cases, {0.0, 0.01, 0.1}, {60.0, 90.0, 120.0, 150.0, 180.0},
                                               s.mc_samples, s.effective_seed(), s.threads);
    for (const auto& c : report.cells) {
        std::printf("%s case=%d csi_err_var=%-5g xi=%3.0f dB  closed=%.6e  mc=%.6e  |diff|/se=%.2f\n",
                    c.pass ? "PASS" : "FAIL", static_cast<int>(c.itc_case), c.csi_err_var, c.tx_snr_db,
                    c.closed_form, c.simulated.estimate,
                    c.sigma > 0 ? std::abs(c.closed_form - c.simulated.estimate) / c.sigma : 0.0);
    }
    std::printf("%zu/%zu cells within 3 standard errors (at most %zu misses allowed): %s\n",
                report.cells.size() - report.failures, report.cells.size(), report.allowed_failures,
                report.pass() ? "PASS" : "FAIL");
    return report.pass() ? 0 : kExitGate;
}

int run_selftest() {
    bool ok = true;
    auto line = [&ok](bool pass, const std::string& what) {
        ok = ok && pass;
        std::printf("%s %s\n", pass ? "PASS" : "FAIL", what.c_str());
    };

    double worst = 0.0;
    for (double x : {0.0, 0.5, 1.0, 5.0, 10.0, 49.9, 50.0, 50.1, 100.0, 300.0, 700.0}) {
        const double ref = std::cyl_bessel_i(0.0, x);
        worst = std::max(worst, std::abs(rfvlc::bessel_i0(x) - ref) / ref);
    }
    line(worst <= 1e-12, "bessel_i0 vs std::cyl_bessel_i on [0, 700], max rel err " + sci(worst));

    worst = 0.0;
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) {
            const double a = 10.0 * i / 19.0;
            const double b = 10.0 * j / 19.0;
            worst = std::max(worst, std::abs(rfvlc::marcum_q1(a, b) - rfvlc::verify::marcum_q1_quadrature(a, b)));
        }
    line(worst <= 1e-10, "marcum_q1 vs quadrature on 20x20 grid over [0,10]^2, max abs err " + sci(worst));

    bool edges = true;
    for (double t = 0.0; t <= 10.0; t += 0.5) {
        edges = edges && rfvlc::marcum_q1(t, 0.0) == 1.0;
        edges = edges && std::abs(rfvlc::marcum_q1(0.0, t) - std::exp(-t * t / 2)) <= 1e-12;
    }
    line(edges, "Q1(a,0) = 1 and Q1(0,b) = exp(-b^2/2)");

    rfvlc::VlcLink link;
    link.distance = 10.0;
    const double g10 = rfvlc::linear_to_db(rfvlc::lambertian_gain(link));
    link.distance = 20.0;
    const double g20 = rfvlc::linear_to_db(rfvlc::lambertian_gain(link));
    line(std::abs(g10 + 65.0) <= 0.1 && std::abs(g20 + 71.0) <= 0.1,
         "Lambertian gain " + sci(g10) + " dB at 10 m, " + sci(g20) + " dB at 20 m");
    return ok ? 0 : kExitGate;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Outage analysis of a cognitive dual-hop network over mixed RF/VLC links"};
    app.require_subcommand(1);

    CommonOptions opts;
    std::optional<double> eval_v;
    std::string sweep_text;
    std::string preset_name;

    auto* eval = app.add_subcommand("eval", "Evaluate the configured operating point");
    add_config_options(*eval, opts);
    add_run_options(*eval, opts);
    eval->add_option("--v", eval_v, "SNR threshold v (overrides the config)");
    eval->add_option("--modes", opts.modes, "Comma-separated modes");
    eval->add_option("--out", opts.out, "Output CSV (stdout when omitted)");

    auto* sweep = app.add_subcommand("sweep", "Sweep one parameter and write CSV");
    add_config_options(*sweep, opts);
    add_run_options(*sweep, opts);
    sweep->add_option("--sweep", sweep_text, "VAR:START:STOP:STEP")->required();
    sweep->add_option("--modes", opts.modes, "Comma-separated modes");
    sweep->add_option("--out", opts.out, "Output CSV (stdout when omitted)");

    auto* preset = app.add_subcommand("preset", "Run a named curve-family preset");
    add_config_options(*preset, opts);
    add_run_options(*preset, opts);
    preset->add_option("name", preset_name, "fig2 | fig3 | fig4 | fig5 | fig6")
        ->required()
        ->check(CLI::IsMember({"fig2", "fig3", "fig4", "fig5", "fig6"}));
    preset->add_option("--modes", opts.modes, "Replace the preset's modes");
    preset->add_option("--out", opts.out, "Output directory (default: ./<name>)");

    auto* validate = app.add_subcommand("validate", "Closed form vs. Monte Carlo gate");
    add_config_options(*validate, opts);
    add_run_options(*validate, opts);

    auto* selftest = app.add_subcommand("selftest", "Special-function oracle checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*eval) return run_eval(opts, eval_v);
        if (*sweep) return run_sweep_cmd(opts, sweep_text);
        if (*preset) return run_preset_cmd(opts, preset_name);
        if (*validate) return run_validate(opts);
        if (*selftest) return run_selftest();
    } catch (const rfvlc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
