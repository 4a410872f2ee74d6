// SPDX-License-Identifier: Apache-2.0
//
// Parameter sweeps, CSV emission and the named presets.
//
// CSV contract (RFC 4180, UTF-8, '.' decimal separator):
//   x,mode,case,value,std_error,n_samples,seed
// Rows are ordered by ascending x, then case, then mode in the order
// requested. std_error, n_samples and seed are empty for analytic modes.
// Values use 17 significant digits.

#ifndef RFVLC_SWEEP_HPP
#define RFVLC_SWEEP_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rfvlc/analysis.hpp"
#include "rfvlc/config.hpp"
#include "rfvlc/montecarlo.hpp"
#include "rfvlc/parallel.hpp"

namespace rfvlc {

enum class SweepVariable { tx_snr_db, v, itc_db, csi_err_var, k_shape_db, d_rd };

enum class Mode {
    exact,            // outage probability
    asymp_a,          // high-SNR outage, ITC kept
    asymp_b,          // high-SNR outage, no ITC
    asymp_c,          // linearized small-CSI-error outage
    rf_rf,            // RF/RF baseline outage
    mc,               // simulated outage
    mc_rf_rf,         // simulated RF/RF outage
    reduction,        // 10 log10(Delta_out / P_out), dB
    reduction_asymp,  // same on the high-SNR forms, dB
    throughput,       // log2(1 + v)/2 (1 - P_out)
    ergodic_mc,       // simulated mean of log2(1 + gamma^DF)/2
};

inline constexpr std::pair<Mode, std::string_view> kModeNames[] = {
    {Mode::exact, "exact"},         {Mode::asymp_a, "asymp_a"},
    {Mode::asymp_b, "asymp_b"},     {Mode::asymp_c, "asymp_c"},
    {Mode::rf_rf, "rf_rf"},         {Mode::mc, "mc"},
    {Mode::mc_rf_rf, "mc_rf_rf"},   {Mode::reduction, "reduction"},
    {Mode::reduction_asymp, "reduction_asymp"},
    {Mode::throughput, "throughput"}, {Mode::ergodic_mc, "ergodic_mc"},
};

inline constexpr std::pair<SweepVariable, std::string_view> kVariableNames[] = {
    {SweepVariable::tx_snr_db, "tx_snr_db"}, {SweepVariable::v, "v"},
    {SweepVariable::itc_db, "itc_db"},       {SweepVariable::csi_err_var, "csi_err_var"},
    {SweepVariable::k_shape_db, "k_shape_db"}, {SweepVariable::d_rd, "d_rd"},
};

inline std::string_view to_string(Mode m) {
    for (const auto& [mode, name] : kModeNames)
        if (mode == m) return name;
    return "?";
}

inline std::string_view to_string(SweepVariable v) {
    for (const auto& [var, name] : kVariableNames)
        if (var == v) return name;
    return "?";
}

inline bool is_probability(Mode m) {
    switch (m) {
        case Mode::exact:
        case Mode::asymp_a:
        case Mode::asymp_b:
        case Mode::asymp_c:
        case Mode::rf_rf:
        case Mode::mc:
        case Mode::mc_rf_rf:
            return true;
        default:
            return false;
    }
}

inline bool is_simulated(Mode m) { return m == Mode::mc || m == Mode::mc_rf_rf || m == Mode::ergodic_mc; }

struct SweepSpec {
    SweepVariable variable = SweepVariable::tx_snr_db;
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;
    std::vector<Mode> modes;

    /// start, start + step, ... up to stop (inclusive, with rounding slack).
    std::vector<double> grid() const {
        std::vector<double> xs;
        const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        xs.reserve(count);
        for (std::size_t i = 0; i < count; ++i) xs.push_back(start + static_cast<double>(i) * step);
        return xs;
    }
};

inline void validate(const SweepSpec& s) {
    if (!std::isfinite(s.start) || !std::isfinite(s.stop) || s.start > s.stop)
        throw ConfigError("sweep", "need finite start <= stop");
    if (!std::isfinite(s.step) || s.step <= 0.0) throw ConfigError("sweep", "step must be positive");
    if (s.modes.empty()) throw ConfigError("modes", "at least one mode is required");
}

inline Mode parse_mode(std::string_view text) {
    for (const auto& [mode, name] : kModeNames)
        if (name == text) return mode;
    throw ConfigError("modes", "unknown mode '" + std::string(text) + "'");
}

/// Comma-separated mode list, e.g. "exact,rf_rf,mc".
inline std::vector<Mode> parse_modes(std::string_view text) {
    std::vector<Mode> modes;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const auto token = text.substr(0, comma);
        if (!token.empty()) modes.push_back(parse_mode(token));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    if (modes.empty()) throw ConfigError("modes", "at least one mode is required");
    return modes;
}

/// VAR:START:STOP:STEP, e.g. "tx_snr_db:0:200:5". Modes are set separately.
inline SweepSpec parse_sweep(std::string_view text) {
    std::vector<std::string> parts;
    std::stringstream ss{std::string(text)};
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 4) throw ConfigError("sweep", "expected VAR:START:STOP:STEP");

    SweepSpec spec;
    bool found = false;
    for (const auto& [var, name] : kVariableNames) {
        if (name == parts[0]) {
            spec.variable = var;
            found = true;
        }
    }
    if (!found) throw ConfigError("sweep", "unknown sweep variable '" + parts[0] + "'");
    try {
        spec.start = std::stod(parts[1]);
        spec.stop = std::stod(parts[2]);
        spec.step = std::stod(parts[3]);
    } catch (const std::exception&) {
        throw ConfigError("sweep", "START, STOP and STEP must be numbers");
    }
    return spec;
}

/// Moves one knob of a run configuration and re-validates the scenario.
inline void apply_sweep_value(RunConfig& cfg, SweepVariable var, double x) {
    Scenario& s = cfg.scenario;
    switch (var) {
        case SweepVariable::tx_snr_db:
            cfg.tx_snr_db = x;
            apply_tx_snr_db(s, x);
            break;
        case SweepVariable::v:
            if (!(x >= 0.0)) throw ConfigError("threshold.v", "must be non-negative");
            cfg.query = OutageQuery::from_snr(x);
            break;
        case SweepVariable::itc_db:
            cfg.itc_db = x;
            apply_itc_db(s, x);
            break;
        case SweepVariable::csi_err_var:
            apply_csi_err_var(s, x);
            break;
        case SweepVariable::k_shape_db:
            s.rd_vlc.turbulence = RicianParams::from_shape_db(x, s.rd_vlc.turbulence.n);
            break;
        case SweepVariable::d_rd:
            apply_rd_distance(s, x);
            break;
    }
    validate_scenario(s);
}

struct RunSettings {
    std::uint64_t mc_samples = 100'000;
    std::optional<std::uint64_t> seed;  // kDefaultSeed when empty
    unsigned threads = 1;

    std::uint64_t effective_seed() const { return seed.value_or(kDefaultSeed); }
};

struct SweepRow {
    double x = 0.0;
    Mode mode = Mode::exact;
    ItcCase itc_case = ItcCase::case1;
    double value = 0.0;
    std::optional<McEstimate> mc;
};

/// Value of one mode at one operating point. Simulated modes run serially;
/// parallelism lives at the sweep-point level.
inline SweepRow evaluate_mode(const Scenario& s, double v, Mode mode, const RunSettings& settings) {
    SweepRow row;
    row.mode = mode;
    row.itc_case = s.itc_case;
    const std::uint64_t seed = settings.effective_seed();
    auto simulated = [&](const McEstimate& e) {
        row.value = e.estimate;
        row.mc = e;
    };
    switch (mode) {
        case Mode::exact: row.value = outage_probability(s, v); break;
        case Mode::asymp_a: row.value = asymptotic_outage(s, v, AsymptoticRegime::high_snr); break;
        case Mode::asymp_b: row.value = asymptotic_outage(s, v, AsymptoticRegime::no_itc); break;
        case Mode::asymp_c: row.value = asymptotic_outage(s, v, AsymptoticRegime::small_csi_error); break;
        case Mode::rf_rf: row.value = rf_rf_outage(s, v); break;
        case Mode::mc: simulated(simulate_outage(s, v, settings.mc_samples, seed)); break;
        case Mode::mc_rf_rf: simulated(simulate_rf_rf_outage(s, v, settings.mc_samples, seed)); break;
        case Mode::reduction: row.value = outage_reduction_db(s, v); break;
        case Mode::reduction_asymp: {
            const double delta = outage_reduction(s, v, ReductionRegime::asymptotic);
            row.value = 10.0 * std::log10(delta / asymptotic_outage(s, v, AsymptoticRegime::high_snr));
            break;
        }
        case Mode::throughput: row.value = throughput(s, v); break;
        case Mode::ergodic_mc: simulated(simulate_ergodic_rate(s, settings.mc_samples, seed)); break;
    }
    return row;
}

/// Evaluates every (x, case, mode) combination. The output order is fixed
/// by construction, independent of the worker count.
inline std::vector<SweepRow> evaluate_sweep(const RunConfig& base, const SweepSpec& spec,
                                            const std::vector<ItcCase>& cases, const RunSettings& settings) {
    validate(spec);
    if (cases.empty()) throw ConfigError("case", "at least one case is required");
    const std::vector<double> xs = spec.grid();

    std::vector<RunConfig> points;
    points.reserve(xs.size());
    for (double x : xs) {
        RunConfig cfg = base;
        apply_sweep_value(cfg, spec.variable, x);
        points.push_back(std::move(cfg));
    }

    const std::size_t per_x = cases.size() * spec.modes.size();
    std::vector<SweepRow> rows(xs.size() * per_x);
    parallel_for(xs.size() * cases.size(), settings.threads, [&](std::size_t task) {
        const std::size_t xi = task / cases.size();
        const std::size_t ci = task % cases.size();
        Scenario s = points[xi].scenario;
        s.itc_case = cases[ci];
        for (std::size_t mi = 0; mi < spec.modes.size(); ++mi) {
            SweepRow row = evaluate_mode(s, points[xi].query.v, spec.modes[mi], settings);
            row.x = xs[xi];
            rows[xi * per_x + ci * spec.modes.size() + mi] = row;
        }
    });
    return rows;
}

inline constexpr std::string_view kCsvHeader = "x,mode,case,value,std_error,n_samples,seed";

namespace detail {

inline std::string format_number(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

}  // namespace detail

inline void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << kCsvHeader << "\r\n";
    for (const SweepRow& r : rows) {
        out << detail::format_number(r.x, 15) << ',' << to_string(r.mode) << ','
            << static_cast<int>(r.itc_case) << ',' << detail::format_number(r.value, 17) << ',';
        if (r.mc) {
            out << detail::format_number(r.mc->std_error, 17) << ',' << r.mc->n_samples << ',' << r.mc->seed;
        } else {
            out << ",,";
        }
        out << "\r\n";
    }
}

inline void write_csv_file(const std::filesystem::path& path, const std::vector<SweepRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    write_csv(out, rows);
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

/// Sweeps the configured case and writes the CSV to `out`.
inline std::vector<SweepRow> run_sweep(const RunConfig& base, const SweepSpec& spec,
                                       const std::filesystem::path& out, const RunSettings& settings) {
    auto rows = evaluate_sweep(base, spec, {base.scenario.itc_case}, settings);
    write_csv_file(out, rows);
    return rows;
}

// ---------------------------------------------------------------------------
// Presets

/// One curve family of a preset: a fixed configuration swept over one axis
/// for one or more cases. Written to `<preset>_<label>.csv`.
struct PresetSeries {
    std::string label;
    RunConfig config;
    SweepSpec sweep;
    std::vector<ItcCase> cases;
};

inline constexpr std::string_view kPresetNames[] = {"fig2", "fig3", "fig4", "fig5", "fig6"};

namespace detail {

inline std::string tag(std::string_view name, double x) { return std::string(name) + format_number(x, 6); }

inline RunConfig with(RunConfig cfg, double d_rd, double itc_db, double csi, double k_db, double v) {
    apply_rd_distance(cfg.scenario, d_rd);
    cfg.itc_db = itc_db;
    apply_itc_db(cfg.scenario, itc_db);
    apply_csi_err_var(cfg.scenario, csi);
    cfg.scenario.rd_vlc.turbulence = RicianParams::from_shape_db(k_db, cfg.scenario.rd_vlc.turbulence.n);
    cfg.query = OutageQuery::from_snr(v);
    if (cfg.tx_snr_db) apply_tx_snr_db(cfg.scenario, *cfg.tx_snr_db);
    validate_scenario(cfg.scenario);
    return cfg;
}

inline SweepSpec snr_axis(std::vector<Mode> modes) { return {SweepVariable::tx_snr_db, 0.0, 200.0, 5.0, std::move(modes)}; }

}  // namespace detail

/// Curve families of each preset. `base` supplies every parameter the
/// preset does not pin (the baseline by default).
///
///   fig2  outage vs xi, cases 1-4, d_RD in {10, 20} m, perfect CSI, v = 2, I_U = 15 dB
///   fig3  case 1 outage vs xi, sigma_eps^2 in {0, 0.01, 0.1}, I_U in {15, 25} dB, with the (a) approximation
///   fig4  case 1 outage vs v at xi = 120 dB, K in {0, 10} dB, sigma_eps^2 in {0, 0.01, 0.1}
///   fig5  case 1 throughput vs xi, K in {0, 5} dB, sigma_eps^2 in {0, 0.01, 0.1}, I_U = 20 dB
///   fig6  case 1 outage reduction (dB) vs xi, d_RD in {10, 20} m, K in {0, 5} dB, sigma_eps^2 in {0, 0.01, 0.1}, I_U = 25 dB
inline std::vector<PresetSeries> preset_series(std::string_view name, const RunConfig& base) {
    using detail::tag;
    using detail::with;
    const std::vector<ItcCase> case1{ItcCase::case1};
    const double csi_levels[] = {0.0, 0.01, 0.1};
    const double k0 = base.scenario.rd_vlc.turbulence.shape_db();
    const double k_base = std::isfinite(k0) ? k0 : 0.0;
    std::vector<PresetSeries> out;

    if (name == "fig2") {
        for (double d : {10.0, 20.0}) {
            out.push_back({tag("d", d), with(base, d, 15.0, 0.0, k_base, 2.0),
                           detail::snr_axis({Mode::exact, Mode::rf_rf, Mode::mc}),
                           {ItcCase::case1, ItcCase::case2, ItcCase::case3, ItcCase::case4}});
        }
    } else if (name == "fig3") {
        for (double iu : {15.0, 25.0})
            for (double eps : csi_levels)
                out.push_back({tag("iu", iu) + "_" + tag("eps", eps), with(base, 10.0, iu, eps, k_base, 2.0),
                               detail::snr_axis({Mode::exact, Mode::asymp_a, Mode::mc}), case1});
    } else if (name == "fig4") {
        for (double k : {0.0, 10.0})
            for (double eps : csi_levels) {
                RunConfig cfg = base;
                cfg.tx_snr_db = 120.0;
                out.push_back({tag("k", k) + "_" + tag("eps", eps), with(cfg, 10.0, base.itc_db, eps, k, 2.0),
                               {SweepVariable::v, 0.0, 10.0, 0.25, {Mode::exact, Mode::mc}}, case1});
            }
    } else if (name == "fig5") {
        for (double k : {0.0, 5.0})
            for (double eps : csi_levels)
                out.push_back({tag("k", k) + "_" + tag("eps", eps), with(base, 10.0, 20.0, eps, k, 2.0),
                               detail::snr_axis({Mode::throughput, Mode::ergodic_mc}), case1});
    } else if (name == "fig6") {
        for (double d : {10.0, 20.0})
            for (double k : {0.0, 5.0})
                for (double eps : csi_levels)
                    out.push_back({tag("d", d) + "_" + tag("k", k) + "_" + tag("eps", eps),
                                   with(base, d, 25.0, eps, k, 2.0), detail::snr_axis({Mode::reduction}), case1});
    } else {
        throw ConfigError("preset", "unknown preset '" + std::string(name) + "'");
    }
    return out;
}

/// Runs a preset and writes one CSV per series into `out_dir`. A non-empty
/// `modes` replaces the preset's own mode list.
inline std::vector<std::filesystem::path> run_preset(std::string_view name, const RunConfig& base,
                                                     const std::filesystem::path& out_dir,
                                                     const RunSettings& settings,
                                                     const std::vector<Mode>& modes = {}) {
    auto series = preset_series(name, base);
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;
    for (auto& s : series) {
        if (!modes.empty()) s.sweep.modes = modes;
        const auto path = out_dir / (std::string(name) + "_" + s.label + ".csv");
        write_csv_file(path, evaluate_sweep(s.config, s.sweep, s.cases, settings));
        written.push_back(path);
    }
    return written;
}

}  // namespace rfvlc

#endif  // RFVLC_SWEEP_HPP
