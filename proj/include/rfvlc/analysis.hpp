// SPDX-License-Identifier: Apache-2.0
//
// Closed-form outage analysis of the dual-hop decode-and-forward network
// S -> R -> D, where the second hop picks the better of an RF link and a
// VLC link. With A = Pr(gamma_R < v), B1 = Pr(gamma_D^RF < v) and
// B2 = Pr(gamma_D^VLC < v):
//
//   P_out       = 1 - (1 - A)(1 - B1 B2)
//   P_out^RF/RF = 1 - (1 - A)(1 - B1)
//
// The four network cases only differ in which transmitters carry an
// interference-temperature power clip, so they are dispatched through two
// flags instead of four transcribed formulas.

#ifndef RFVLC_ANALYSIS_HPP
#define RFVLC_ANALYSIS_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rfvlc/channel.hpp"
#include "rfvlc/specfun.hpp"

namespace rfvlc {

/// Which secondary transmitters must respect the interference constraint.
enum class ItcCase {
    case1 = 1,  // source and relay
    case2 = 2,  // relay only
    case3 = 3,  // source only
    case4 = 4,  // neither
};

constexpr bool source_itc_active(ItcCase c) { return c == ItcCase::case1 || c == ItcCase::case3; }
constexpr bool relay_itc_active(ItcCase c) { return c == ItcCase::case1 || c == ItcCase::case2; }

inline ItcCase itc_case_from_int(int n) {
    if (n < 1 || n > 4) throw std::invalid_argument("case must be 1, 2, 3 or 4");
    return static_cast<ItcCase>(n);
}

struct Scenario {
    RfLink sr;
    RfLink rd_rf;
    PowerConstraint su;  // su.p_max is the source power cap
    PowerConstraint ru;  // ru.p_max is the relay power cap
    VlcLink rd_vlc;
    double p_t = 1.0;    // VLC transmit power, W
    ItcCase itc_case = ItcCase::case1;

    double p_s() const { return su.p_max; }
    double p_r() const { return ru.p_max; }

    /// Power constraints with the clip switched on or off by the case.
    PowerConstraint source_constraint() const {
        PowerConstraint c = su;
        c.constrained = source_itc_active(itc_case);
        return c;
    }
    PowerConstraint relay_constraint() const {
        PowerConstraint c = ru;
        c.constrained = relay_itc_active(itc_case);
        return c;
    }
};

/// v = 2^{2 R_th} - 1; the factor 2 accounts for the two relaying slots.
inline double snr_threshold_from_rate(double rate) { return std::exp2(2.0 * rate) - 1.0; }
inline double rate_from_snr_threshold(double v) { return 0.5 * std::log2(1.0 + v); }

struct OutageQuery {
    double v = 0.0;

    static OutageQuery from_snr(double v) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("threshold v must be >= 0");
        return {v};
    }
    static OutageQuery from_rate(double rate) { return from_snr(snr_threshold_from_rate(rate)); }
    double rate() const { return rate_from_snr_threshold(v); }
};

struct OutageTerms {
    double a = 0.0;   // relay hop
    double b1 = 0.0;  // RF branch of the second hop
    double b2 = 0.0;  // VLC branch of the second hop
};

enum class AsymptoticRegime {
    high_snr,         // (a): P_S, P_R, P_t -> infinity
    no_itc,           // (b): additionally I_U -> infinity
    small_csi_error,  // (c): e^{-x} ~ 1 - x applied to (b)
};

enum class ReductionRegime { exact, asymptotic };

namespace detail {

/// 1 - (1 - a)(1 - b) as a + b (1 - a): no cancellation for small a, b,
/// exactly 1 when a = 1, and monotone in a and b under rounding.
inline double union_probability(double a, double b) { return a + b * (1.0 - a); }

/// Pr(SINR < v) for one clipped RF hop:
///   1 - e^{-x} [1 - (1 - Sigma) e^{-lambda_U K / P}]
///   x = lambda~ v (sigma_eps^2 + noise_term)
///   Sigma = (1 + lambda~ v d^tau sigma^2 / (lambda_U K))^{-1}
/// `noise_term` is d^tau sigma^2 / P for the exact form and 0 in the
/// high-SNR limit; the clip factor always uses the configured P.
inline double hop_outage(const RfLink& hop, const PowerConstraint& clip, double v, double noise_term) {
    if (v <= 0.0) return 0.0;
    const double x = hop.rate_est * v * (hop.csi_err_var + noise_term);
    double out = -std::expm1(-x);
    if (clip.constrained) {
        const double budget = clip.interference_budget();
        const double t = hop.rate_est * v * hop.path_loss() * hop.noise_var / (clip.rate * budget);
        const double one_minus_sigma = t / (1.0 + t);
        out += std::exp(-x) * one_minus_sigma * std::exp(-clip.rate * budget / clip.p_max);
    }
    return std::clamp(out, 0.0, 1.0);
}

inline double exact_hop_outage(const RfLink& hop, const PowerConstraint& clip, double v) {
    return hop_outage(hop, clip, v, hop.path_loss() * hop.noise_var / clip.p_max);
}

/// Marcum arguments (s / sqrt(N), normalized threshold amplitude) of the VLC
/// outage term; `noise_scale` is sigma_I^2 / (P_t (rho g_L)^2), or 0 in the
/// high-SNR limit.
inline MarcumQ1 vlc_marcum(const VlcLink& link, double v, double noise_scale) {
    const RicianParams& t = link.turbulence;
    const double a = t.s / std::sqrt(t.n);
    const double b = std::sqrt(v / t.n * (link.csi_err_var + noise_scale));
    return marcum_q1_pair(a, b);
}

inline double vlc_noise_scale(const Scenario& s) {
    const double g = s.rd_vlc.responsivity * lambertian_gain(s.rd_vlc);
    return vlc_noise_variance(s.rd_vlc) / (s.p_t * g * g);
}

/// VLC term of the high-SNR forms; a blocked VLC link stays in outage.
inline MarcumQ1 vlc_marcum_high_snr(const Scenario& s, double v) {
    if (lambertian_gain(s.rd_vlc) <= 0.0) return {0.0, 1.0};
    return vlc_marcum(s.rd_vlc, v, 0.0);
}

inline OutageTerms high_snr_terms(const Scenario& s, double v, bool keep_itc) {
    PowerConstraint src = s.source_constraint();
    PowerConstraint rel = s.relay_constraint();
    if (!keep_itc) src.constrained = rel.constrained = false;
    return {hop_outage(s.sr, src, v, 0.0), hop_outage(s.rd_rf, rel, v, 0.0),
            vlc_marcum_high_snr(s, v).p};
}

}  // namespace detail

/// A = Pr(gamma_R < v), source hop with the case's clip.
inline double term_a(const Scenario& s, double v) {
    return detail::exact_hop_outage(s.sr, s.source_constraint(), v);
}

/// B1 = Pr(gamma_D^RF < v), relay hop with the case's clip.
inline double term_b1(const Scenario& s, double v) {
    return detail::exact_hop_outage(s.rd_rf, s.relay_constraint(), v);
}

/// B2 = Pr(gamma_D^VLC < v) = 1 - Q1(s/sqrt(N), sqrt(v ((rho g_L sigma_eps)^2 P_t + sigma_I^2)) / (sqrt(N P_t) rho g_L)).
/// A zero optical gain means the VLC link is permanently in outage.
inline double term_b2(const Scenario& s, double v) {
    if (v <= 0.0) return 0.0;
    if (lambertian_gain(s.rd_vlc) <= 0.0) return 1.0;
    return detail::vlc_marcum(s.rd_vlc, v, detail::vlc_noise_scale(s)).p;
}

inline OutageTerms outage_terms(const Scenario& s, double v) {
    return {term_a(s, v), term_b1(s, v), term_b2(s, v)};
}

/// 1 - (1 - A)(1 - B1 B2) = A + B1 B2 - A B1 B2.
inline double combine_outage(const OutageTerms& t) {
    return detail::union_probability(t.a, t.b1 * t.b2);
}

inline double combine_rf_rf_outage(const OutageTerms& t) {
    return detail::union_probability(t.a, t.b1);
}

inline double outage_probability(const Scenario& s, double v) {
    return combine_outage(outage_terms(s, v));
}

/// Baseline without the VLC branch: B2 forced to 1.
inline double rf_rf_outage(const Scenario& s, double v) {
    return combine_rf_rf_outage(outage_terms(s, v));
}

/// High-SNR outage approximations.
///
/// (a) drops every noise-over-power term but keeps Sigma_i and the
///     e^{-lambda_iU K_i / P_i} factors, so the ITC saturation remains.
/// (b) drops the ITC as well; all cases collapse onto case 4's (a) value.
/// (c) linearizes (b) in lambda~ v sigma_eps^2 and keeps the Marcum factor:
///     1 - (1 - x_SR)(1 - x_RD [1 - Q1(s/sqrt(N), sqrt(v sigma_eps^2 / N))]).
///     Only meaningful while x_i = lambda~_i v sigma_eps^2 is small; the
///     result is clamped to [0, 1] otherwise.
inline double asymptotic_outage(const Scenario& s, double v, AsymptoticRegime regime) {
    if (v <= 0.0) return 0.0;
    switch (regime) {
        case AsymptoticRegime::high_snr:
            return combine_outage(detail::high_snr_terms(s, v, true));
        case AsymptoticRegime::no_itc:
            return combine_outage(detail::high_snr_terms(s, v, false));
        case AsymptoticRegime::small_csi_error: {
            const double x_sr = s.sr.rate_est * v * s.sr.csi_err_var;
            const double x_rd = s.rd_rf.rate_est * v * s.rd_rf.csi_err_var;
            const double vlc = detail::vlc_marcum_high_snr(s, v).p;
            return std::clamp(detail::union_probability(x_sr, x_rd * vlc), 0.0, 1.0);
        }
    }
    throw std::invalid_argument("unknown asymptotic regime");
}

/// Normalized throughput R_th (1 - P_out) with R_th = log2(1 + v) / 2.
inline double throughput(const Scenario& s, double v) {
    return rate_from_snr_threshold(v) * (1.0 - outage_probability(s, v));
}

/// Outage reduction |P_out - P_out^RF/RF| obtained from the VLC branch.
///
/// The exact regime is the direct difference of the two outage
/// probabilities (same shared terms, so it matches them bit-for-bit). The
/// asymptotic regime evaluates (1 - A) Q1 B1 on the high-SNR terms; with
/// sigma_eps^2 = 0 it reduces to (1 - Sigma_R) e^{-lambda_RU K_R / P_R}
/// times the source bracket for case 1, that factor alone for case 2, and 0
/// for cases 3 and 4.
inline double outage_reduction(const Scenario& s, double v, ReductionRegime regime) {
    if (regime == ReductionRegime::exact) {
        const OutageTerms t = outage_terms(s, v);
        return std::abs(combine_outage(t) - combine_rf_rf_outage(t));
    }
    if (v <= 0.0) return 0.0;
    const OutageTerms t = detail::high_snr_terms(s, v, true);
    const double q = detail::vlc_marcum_high_snr(s, v).q;
    return std::abs((1.0 - t.a) * q * t.b1);
}

/// The exact reduction written as the single product (1 - A) B1 Q1 with Q1
/// taken from the Marcum series directly rather than as 1 - B2.
inline double outage_reduction_product_form(const Scenario& s, double v) {
    if (v <= 0.0) return 0.0;
    const double a = term_a(s, v);
    const double b1 = term_b1(s, v);
    const double q = lambertian_gain(s.rd_vlc) <= 0.0
                         ? 0.0
                         : detail::vlc_marcum(s.rd_vlc, v, detail::vlc_noise_scale(s)).q;
    return std::abs((1.0 - a) * q * b1);
}

/// Outage reduction relative to the achieved outage, 10 log10(Delta / P_out) dB.
inline double outage_reduction_db(const Scenario& s, double v) {
    const OutageTerms t = outage_terms(s, v);
    const double p = combine_outage(t);
    const double delta = std::abs(p - combine_rf_rf_outage(t));
    return 10.0 * std::log10(delta / p);
}

}  // namespace rfvlc

#endif  // RFVLC_ANALYSIS_HPP
