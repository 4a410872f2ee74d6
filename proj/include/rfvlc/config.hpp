// SPDX-License-Identifier: Apache-2.0
//
// Scenario files. A config is a JSON object whose every field is optional;
// anything left out takes its baseline value, so `{}` is the baseline
// itself. See docs/config.md for the schema.

#ifndef RFVLC_CONFIG_HPP
#define RFVLC_CONFIG_HPP

#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "rfvlc/analysis.hpp"
#include "rfvlc/channel.hpp"

namespace rfvlc {

/// Invalid or unreadable configuration. `path()` names the offending field
/// in dotted form, e.g. `links.rd.distance`.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& message)
        : std::runtime_error(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// A scenario plus the knobs that sweeps and presets move in their own units.
struct RunConfig {
    Scenario scenario;
    OutageQuery query{2.0};
    double itc_db = 15.0;
    std::optional<double> tx_snr_db = 120.0;  // empty when powers are given in watts
};

/// Transmit SNR mapping shared by both domains:
/// P_S = xi sigma_R^2, P_R = xi sigma_D^2, P_t = xi sigma_I^2.
inline void apply_tx_snr_db(Scenario& s, double xi_db) {
    const double xi = db_to_linear(xi_db);
    s.su.p_max = xi * s.sr.noise_var;
    s.ru.p_max = xi * s.rd_rf.noise_var;
    s.p_t = xi * vlc_noise_variance(s.rd_vlc);
}

inline void apply_itc_db(Scenario& s, double itc_db) {
    s.su.itc = s.ru.itc = db_to_linear(itc_db);
}

inline void apply_csi_err_var(Scenario& s, double var) {
    s.sr.csi_err_var = s.rd_rf.csi_err_var = s.rd_vlc.csi_err_var = var;
}

inline void apply_rd_distance(Scenario& s, double d) {
    s.rd_rf.distance = s.rd_vlc.distance = d;
}

/// Baseline: d_SR = 15 m, d_SU = 20 m, d_RD = 10 m, d_RU = 5 m,
/// tau = 2.7, unit-mean fading, K = 0 dB, perfect CSI, I_U = 15 dB,
/// v = 2, xi = 120 dB, case 1.
inline RunConfig baseline_config() {
    RunConfig cfg;
    Scenario& s = cfg.scenario;
    s.sr.distance = 15.0;
    s.rd_rf.distance = 10.0;
    s.su.distance = 20.0;
    s.ru.distance = 5.0;
    s.rd_vlc.distance = 10.0;
    apply_itc_db(s, cfg.itc_db);
    apply_tx_snr_db(s, *cfg.tx_snr_db);
    return cfg;
}

namespace detail {

inline void require(bool ok, std::string_view path, const char* message) {
    if (!ok) throw ConfigError(std::string(path), message);
}

inline void require_positive(double x, std::string_view path) {
    require(std::isfinite(x) && x > 0.0, path, "must be a finite positive number");
}

inline void require_non_negative_field(double x, std::string_view path) {
    require(std::isfinite(x) && x >= 0.0, path, "must be a finite non-negative number");
}

inline void validate_rf(const RfLink& l, const std::string& path) {
    require_positive(l.distance, path + ".distance");
    require_positive(l.path_loss_exp, "path_loss_exp");
    require_positive(l.rate_true, path + ".rate_true");
    require_positive(l.rate_est, path + ".rate_est");
    require_non_negative_field(l.csi_err_var, path + ".csi_err_var");
    require_positive(l.noise_var, path + ".noise_var");
}

inline void validate_constraint(const PowerConstraint& c, const std::string& path, const char* power_key) {
    require_positive(c.p_max, power_key);
    require(!std::isnan(c.itc) && c.itc > 0.0, "itc_db", "must give a positive interference limit");
    require_positive(c.distance, path + ".distance");
    require_positive(c.path_loss_exp, "path_loss_exp");
    require_positive(c.rate, path + ".rate");
}

}  // namespace detail

/// Checks every type invariant; throws ConfigError naming the config field.
inline void validate_scenario(const Scenario& s) {
    using detail::require_positive;
    detail::validate_rf(s.sr, "links.sr");
    detail::validate_rf(s.rd_rf, "links.rd");
    detail::validate_constraint(s.su, "links.su", "powers.p_s");
    detail::validate_constraint(s.ru, "links.ru", "powers.p_r");

    const VlcLink& v = s.rd_vlc;
    require_positive(v.distance, "links.rd.distance");
    require_positive(v.lambertian_order, "vlc.lambertian_order");
    require_positive(v.pd_area, "vlc.pd_area");
    detail::require_non_negative_field(v.incidence_angle, "vlc.incidence_angle_deg");
    require_positive(v.fov, "vlc.fov_deg");
    detail::require_non_negative_field(v.filter_gain, "vlc.filter_gain");
    detail::require_non_negative_field(v.concentrator_gain, "vlc.concentrator_gain");
    require_positive(v.responsivity, "vlc.responsivity");
    detail::require_non_negative_field(v.turbulence.s, "vlc.rician_s");
    require_positive(v.turbulence.n, "vlc.rician_n");
    detail::require_non_negative_field(v.csi_err_var, "vlc.csi_err_var");

    const NoiseBudget& n = v.noise;
    require_positive(n.electron_charge, "vlc.noise.electron_charge");
    require_positive(n.background_current, "vlc.noise.background_current");
    require_positive(n.i2, "vlc.noise.i2");
    require_positive(n.i3, "vlc.noise.i3");
    require_positive(n.data_rate, "vlc.noise.data_rate");
    require_positive(n.boltzmann, "vlc.noise.boltzmann");
    require_positive(n.temperature, "vlc.noise.temperature");
    require_positive(n.capacitance, "vlc.noise.capacitance");
    require_positive(n.fet_noise_factor, "vlc.noise.fet_noise_factor");
    require_positive(n.open_loop_gain, "vlc.noise.open_loop_gain");
    require_positive(n.transconductance, "vlc.noise.transconductance");

    // Checked last: with tx_snr_db the optical power follows sigma_I^2, so a
    // bad noise field shows up here too and should be reported first.
    require_positive(s.p_t, "powers.p_t");
}

namespace detail {

using nlohmann::json;

inline std::string join_path(std::string_view parent, std::string_view key) {
    return parent.empty() ? std::string(key) : std::string(parent) + "." + std::string(key);
}

inline void require_object(const json& j, std::string_view path) {
    require(j.is_object(), path.empty() ? "config" : path, "must be a JSON object");
}

inline void reject_unknown(const json& j, std::string_view path, std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (auto a : allowed) known = known || key == a;
        if (!known) throw ConfigError(join_path(path, key), "unknown key");
    }
}

inline std::optional<double> number_at(const json& j, std::string_view path, std::string_view key) {
    auto it = j.find(std::string(key));
    if (it == j.end()) return std::nullopt;
    require(it->is_number(), join_path(path, key), "must be a number");
    return it->get<double>();
}

inline void read_number(const json& j, std::string_view path, std::string_view key, double& out) {
    if (auto x = number_at(j, path, key)) out = *x;
}

inline const json* child(const json& j, std::string_view path, std::string_view key) {
    auto it = j.find(std::string(key));
    if (it == j.end()) return nullptr;
    require_object(*it, join_path(path, key));
    return &*it;
}

inline void read_rf(const json& j, const std::string& path, RfLink& link) {
    reject_unknown(j, path, {"distance", "rate_true", "rate_est", "csi_err_var", "noise_var"});
    read_number(j, path, "distance", link.distance);
    read_number(j, path, "rate_true", link.rate_true);
    read_number(j, path, "rate_est", link.rate_est);
    read_number(j, path, "csi_err_var", link.csi_err_var);
    read_number(j, path, "noise_var", link.noise_var);
}

inline void read_interferer(const json& j, const std::string& path, PowerConstraint& clip) {
    reject_unknown(j, path, {"distance", "rate"});
    read_number(j, path, "distance", clip.distance);
    read_number(j, path, "rate", clip.rate);
}

inline void read_noise(const json& j, const std::string& path, NoiseBudget& n) {
    reject_unknown(j, path,
                   {"electron_charge", "background_current", "i2", "i3", "data_rate", "boltzmann",
                    "temperature", "capacitance", "fet_noise_factor", "open_loop_gain", "transconductance"});
    read_number(j, path, "electron_charge", n.electron_charge);
    read_number(j, path, "background_current", n.background_current);
    read_number(j, path, "i2", n.i2);
    read_number(j, path, "i3", n.i3);
    read_number(j, path, "data_rate", n.data_rate);
    read_number(j, path, "boltzmann", n.boltzmann);
    read_number(j, path, "temperature", n.temperature);
    read_number(j, path, "capacitance", n.capacitance);
    read_number(j, path, "fet_noise_factor", n.fet_noise_factor);
    read_number(j, path, "open_loop_gain", n.open_loop_gain);
    read_number(j, path, "transconductance", n.transconductance);
}

inline void read_vlc(const json& j, const std::string& path, VlcLink& v) {
    reject_unknown(j, path,
                   {"lambertian_order", "pd_area", "irradiance_angle_deg", "incidence_angle_deg", "fov_deg",
                    "filter_gain", "concentrator_gain", "responsivity", "k_shape_db", "rician_s", "rician_n",
                    "csi_err_var", "noise"});
    read_number(j, path, "lambertian_order", v.lambertian_order);
    read_number(j, path, "pd_area", v.pd_area);
    if (auto x = number_at(j, path, "irradiance_angle_deg")) v.irradiance_angle = deg_to_rad(*x);
    if (auto x = number_at(j, path, "incidence_angle_deg")) v.incidence_angle = deg_to_rad(*x);
    if (auto x = number_at(j, path, "fov_deg")) v.fov = deg_to_rad(*x);
    read_number(j, path, "filter_gain", v.filter_gain);
    read_number(j, path, "concentrator_gain", v.concentrator_gain);
    read_number(j, path, "responsivity", v.responsivity);
    read_number(j, path, "csi_err_var", v.csi_err_var);

    read_number(j, path, "rician_n", v.turbulence.n);
    require_positive(v.turbulence.n, join_path(path, "rician_n"));
    const auto k_db = number_at(j, path, "k_shape_db");
    const auto s = number_at(j, path, "rician_s");
    require(!(k_db && s), join_path(path, "rician_s"), "give either k_shape_db or rician_s, not both");
    if (s) v.turbulence.s = *s;
    else v.turbulence = RicianParams::from_shape_db(k_db.value_or(0.0), v.turbulence.n);

    if (const json* n = child(j, path, "noise")) read_noise(*n, join_path(path, "noise"), v.noise);
}

}  // namespace detail

/// Builds a validated RunConfig from a parsed JSON document.
inline RunConfig config_from_json(const nlohmann::json& j) {
    using namespace detail;
    require_object(j, "");
    reject_unknown(j, "", {"case", "threshold", "tx_snr_db", "powers", "itc_db", "path_loss_exp", "csi_err_var",
                           "links", "vlc"});

    RunConfig cfg = baseline_config();
    Scenario& s = cfg.scenario;

    if (auto it = j.find("case"); it != j.end()) {
        require(it->is_number_integer() && it->get<int>() >= 1 && it->get<int>() <= 4, "case",
                "must be an integer in 1..4");
        s.itc_case = itc_case_from_int(it->get<int>());
    }

    if (const json* t = child(j, "", "threshold")) {
        reject_unknown(*t, "threshold", {"v", "rate"});
        const auto v = number_at(*t, "threshold", "v");
        const auto rate = number_at(*t, "threshold", "rate");
        require(!(v && rate), "threshold.rate", "give either v or rate, not both");
        if (v) {
            require_non_negative_field(*v, "threshold.v");
            cfg.query = OutageQuery::from_snr(*v);
        } else if (rate) {
            require_non_negative_field(*rate, "threshold.rate");
            cfg.query = OutageQuery::from_rate(*rate);
        }
    }

    if (auto tau = number_at(j, "", "path_loss_exp")) {
        s.sr.path_loss_exp = s.rd_rf.path_loss_exp = s.su.path_loss_exp = s.ru.path_loss_exp = *tau;
    }
    if (auto eps = number_at(j, "", "csi_err_var")) apply_csi_err_var(s, *eps);

    if (const json* links = child(j, "", "links")) {
        reject_unknown(*links, "links", {"sr", "rd", "su", "ru"});
        if (const json* l = child(*links, "links", "sr")) read_rf(*l, "links.sr", s.sr);
        if (const json* l = child(*links, "links", "rd")) {
            read_rf(*l, "links.rd", s.rd_rf);
            s.rd_vlc.distance = s.rd_rf.distance;
        }
        if (const json* l = child(*links, "links", "su")) read_interferer(*l, "links.su", s.su);
        if (const json* l = child(*links, "links", "ru")) read_interferer(*l, "links.ru", s.ru);
    }
    if (const json* v = child(j, "", "vlc")) read_vlc(*v, "vlc", s.rd_vlc);

    if (auto itc = number_at(j, "", "itc_db")) {
        require(std::isfinite(*itc), "itc_db", "must be finite");
        cfg.itc_db = *itc;
    }
    apply_itc_db(s, cfg.itc_db);

    const auto xi = number_at(j, "", "tx_snr_db");
    const json* powers = child(j, "", "powers");
    require(!(xi && powers), "powers", "give either tx_snr_db or powers, not both");
    if (powers) {
        reject_unknown(*powers, "powers", {"p_s", "p_r", "p_t"});
        cfg.tx_snr_db.reset();
        read_number(*powers, "powers", "p_s", s.su.p_max);
        read_number(*powers, "powers", "p_r", s.ru.p_max);
        read_number(*powers, "powers", "p_t", s.p_t);
    } else {
        if (xi) {
            require(std::isfinite(*xi), "tx_snr_db", "must be finite");
            cfg.tx_snr_db = *xi;
        }
        apply_tx_snr_db(s, *cfg.tx_snr_db);
    }

    validate_scenario(s);
    return cfg;
}

inline RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open config file '" + path.string() + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("", "'" + path.string() + "' is not valid JSON: " + e.what());
    }
    return config_from_json(j);
}

inline Scenario load_scenario(const std::filesystem::path& path) { return load_config(path).scenario; }

}  // namespace rfvlc

#endif  // RFVLC_CONFIG_HPP
