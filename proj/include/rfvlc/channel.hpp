// SPDX-License-Identifier: Apache-2.0
//
// Link models: Rayleigh-faded RF hops with imperfect CSI, the underlay
// transmit-power clip, and the Lambertian/Rician VLC hop with PIN
// photodiode noise. Default member values are the baseline receiver and
// geometry.

#ifndef RFVLC_CHANNEL_HPP
#define RFVLC_CHANNEL_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rfvlc/random.hpp"
#include "rfvlc/specfun.hpp"

namespace rfvlc {

inline constexpr double kElectronCharge = 1.602176634e-19;  // C
inline constexpr double kBoltzmann = 1.380649e-23;          // J/K

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }
inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

/// One Rayleigh-faded RF hop. The rates are the reciprocal means of |h|^2
/// (true channel) and |h~|^2 (channel estimate).
struct RfLink {
    double distance = 1.0;        // m
    double path_loss_exp = 2.7;
    double rate_true = 1.0;
    double rate_est = 1.0;
    double csi_err_var = 0.0;
    double noise_var = 1.0;       // W

    double path_loss() const { return std::pow(distance, path_loss_exp); }
};

/// Underlay power cap P = min(P_max, K / |h_iU|^2) with K = I_U d_iU^tau.
struct PowerConstraint {
    double p_max = 1.0;           // W
    double itc = 1.0;             // interference temperature at U, W
    double distance = 1.0;        // to the primary receiver, m
    double path_loss_exp = 2.7;
    double rate = 1.0;            // rate of |h_iU|^2
    bool constrained = true;

    double interference_budget() const { return itc * std::pow(distance, path_loss_exp); }
};

inline double effective_tx_power(const PowerConstraint& c, double h_iu_sq) {
    if (!c.constrained || h_iu_sq <= 0.0) return c.p_max;
    return std::min(c.p_max, c.interference_budget() / h_iu_sq);
}

/// PIN photodiode receiver noise inputs.
struct NoiseBudget {
    double electron_charge = kElectronCharge;
    double background_current = 1e-3;  // A
    double i2 = 0.562;
    double i3 = 0.0868;
    double data_rate = 2e8;             // bit/s
    double boltzmann = kBoltzmann;
    double temperature = 300.0;         // K
    double capacitance = 112e-8;        // eta, used as tabulated
    double fet_noise_factor = 1.5;      // Gamma
    double open_loop_gain = 10.0;       // G
    double transconductance = 0.03;     // g_m, S
};

/// Point-to-point headlight-to-photodiode link.
struct VlcLink {
    double distance = 10.0;             // m
    double lambertian_order = 1.0;
    double pd_area = 1e-4;              // m^2
    double irradiance_angle = 0.0;      // rad
    double incidence_angle = 0.0;       // rad
    double fov = std::numbers::pi / 3;  // rad
    double filter_gain = 1.0;
    double concentrator_gain = 1.0;
    double responsivity = 0.53;         // A/W
    RicianParams turbulence = RicianParams::from_shape_db(0.0, 1.0);
    double csi_err_var = 0.0;
    NoiseBudget noise{};
};

/// Lambertian path gain; zero once the incidence angle reaches the FOV.
inline double lambertian_gain(const VlcLink& link) {
    if (link.incidence_angle >= link.fov) return 0.0;
    const double m = link.lambertian_order;
    return (m + 1.0) * link.pd_area / (2.0 * std::numbers::pi * link.distance * link.distance) *
           std::pow(std::cos(link.irradiance_angle), m) * link.filter_gain *
           std::cos(link.incidence_angle) * link.concentrator_gain;
}

inline double shot_noise_variance(const NoiseBudget& n, double responsivity) {
    return 2.0 * n.electron_charge * responsivity * n.background_current * n.i2 * n.data_rate;
}

inline double thermal_noise_variance(const NoiseBudget& n, double pd_area) {
    const double kt = n.boltzmann * n.temperature;
    const double rb = n.data_rate;
    const double feedback = 8.0 * std::numbers::pi * kt * n.capacitance * pd_area * n.i2 * rb * rb /
                            n.open_loop_gain;
    const double fet = 16.0 * std::numbers::pi * std::numbers::pi * kt * n.fet_noise_factor *
                       n.capacitance * n.capacitance * pd_area * pd_area * n.i3 * rb * rb * rb /
                       n.transconductance;
    return feedback + fet;
}

/// sigma_I^2: shot plus thermal current variance, A^2.
inline double vlc_noise_variance(const VlcLink& link) {
    return shot_noise_variance(link.noise, link.responsivity) +
           thermal_noise_variance(link.noise, link.pd_area);
}

/// SINR of an RF hop given the estimated channel power |h~|^2.
inline double rf_sinr(const RfLink& link, double tx_power, double gain_est_sq) {
    return tx_power * gain_est_sq /
           (tx_power * link.csi_err_var + link.path_loss() * link.noise_var);
}

inline double draw_rf_sinr(const RfLink& link, double tx_power, RandomStream& rng) {
    return rf_sinr(link, tx_power, sample_exponential(link.rate_est, rng));
}

/// Deterministic part of the VLC hop, so per-draw work is a few multiplies.
struct VlcLinkBudget {
    double electrical_gain = 0.0;  // rho * g_L
    double csi_err_var = 0.0;
    double noise_var = 0.0;        // sigma_I^2
    RicianParams turbulence{};

    double snr(double p_t, double turbulence_sample) const {
        const double signal = electrical_gain * turbulence_sample;
        return signal * signal * p_t /
               (electrical_gain * electrical_gain * csi_err_var * p_t + noise_var);
    }
};

inline VlcLinkBudget link_budget(const VlcLink& link) {
    return {link.responsivity * lambertian_gain(link), link.csi_err_var, vlc_noise_variance(link),
            link.turbulence};
}

inline double vlc_snr(const VlcLink& link, double p_t, double turbulence_sample) {
    return link_budget(link).snr(p_t, turbulence_sample);
}

inline double draw_vlc_snr(const VlcLink& link, double p_t, RandomStream& rng) {
    return vlc_snr(link, p_t, sample_rician(link.turbulence, rng));
}

}  // namespace rfvlc

#endif  // RFVLC_CHANNEL_HPP
