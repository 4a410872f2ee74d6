// SPDX-License-Identifier: Apache-2.0
//
// Special functions and random variates used by the outage closed forms and
// the link simulator: modified Bessel I0, first-order Marcum Q, exponential
// and Rician samplers.

#ifndef RFVLC_SPECFUN_HPP
#define RFVLC_SPECFUN_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "rfvlc/random.hpp"

namespace rfvlc {

/// Rician amplitude parameters: LOS amplitude `s` and per-dimension scatter
/// variance `n`. The shape factor is K = s^2 / (2n).
struct RicianParams {
    double s = 0.0;
    double n = 1.0;

    static RicianParams from_shape(double k_linear, double n) {
        return {std::sqrt(2.0 * n * k_linear), n};
    }
    static RicianParams from_shape_db(double k_db, double n) {
        return from_shape(std::pow(10.0, k_db / 10.0), n);
    }

    double shape() const { return s * s / (2.0 * n); }
    double shape_db() const { return 10.0 * std::log10(shape()); }
};

inline void validate(const RicianParams& p) {
    if (!std::isfinite(p.s) || p.s < 0.0)
        throw std::domain_error("rician: s must be finite and non-negative");
    if (!std::isfinite(p.n) || p.n <= 0.0)
        throw std::domain_error("rician: N must be finite and positive");
}

namespace detail {

inline void require_non_negative(double x, const char* what) {
    if (!std::isfinite(x) || x < 0.0)
        throw std::domain_error(std::string(what) + ": argument must be finite and non-negative");
}

// Sum of (x/2)^{2k} / (k!)^2. All terms positive, so no cancellation.
inline double i0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum;
}

// e^{-x} I0(x) from the large-argument expansion
// (2 pi x)^{-1/2} sum_k [(2k-1)!!]^2 / (k! (8x)^k).
inline double i0_asymptotic_scaled(double x) {
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = term * odd * odd / (8.0 * x * k);
        if (next >= term) break;  // expansion starts diverging
        term = next;
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

}  // namespace detail

/// Switch-over argument between the power series and the scaled
/// large-argument expansion of I0.
inline constexpr double kI0SeriesLimit = 50.0;

/// e^{-x} I0(x); finite for every x >= 0.
inline double bessel_i0_scaled(double x) {
    detail::require_non_negative(x, "bessel_i0_scaled");
    if (x <= kI0SeriesLimit) return std::exp(-x) * detail::i0_series(x);
    return detail::i0_asymptotic_scaled(x);
}

/// Modified Bessel function of the first kind, order zero. Overflows to
/// +inf past x ~ 713; use bessel_i0_scaled there.
inline double bessel_i0(double x) {
    detail::require_non_negative(x, "bessel_i0");
    if (x <= kI0SeriesLimit) return detail::i0_series(x);
    return std::exp(x) * detail::i0_asymptotic_scaled(x);
}

/// Q1(a, b) together with its complement 1 - Q1(a, b). Whichever of the two
/// is produced directly by the series carries full relative precision.
struct MarcumQ1 {
    double q;
    double p;
};

/// First-order Marcum Q-function.
///
/// Uses the Bessel series split at b = a:
///   b >  a:  Q1 = e^{-(a^2+b^2)/2} sum_{k>=0} (a/b)^k I_k(ab)
///   b <= a:  1 - Q1 = e^{-(a^2+b^2)/2} sum_{k>=1} (b/a)^k I_k(ab)
/// with I_k evaluated in exponentially scaled form. The ratios
/// I_k / I_{k-1} come from backward recurrence, so no I_k overflows.
inline MarcumQ1 marcum_q1_pair(double a, double b) {
    detail::require_non_negative(a, "marcum_q1(a)");
    detail::require_non_negative(b, "marcum_q1(b)");
    if (b == 0.0) return {1.0, 0.0};
    if (a == 0.0) {
        const double h = 0.5 * b * b;
        return {std::exp(-h), -std::expm1(-h)};
    }

    const bool upper = b > a;
    const double gap = b - a;
    const double prefactor = std::exp(-0.5 * gap * gap);  // e^{-(a^2+b^2)/2} e^{ab}
    if (prefactor == 0.0) return upper ? MarcumQ1{0.0, 1.0} : MarcumQ1{1.0, 0.0};

    const double x = a * b;
    const double ratio = upper ? a / b : b / a;

    // I_k(x)/I_0(x) ~ exp(-k^2 / 2x) for large x and (x/2)^k/k! for small x;
    // `terms` covers both well below double precision.
    const auto terms = static_cast<std::size_t>(std::ceil(std::sqrt(80.0 * x))) + 40;
    const std::size_t start = 2 * terms + 20;
    std::vector<double> bessel_ratio(terms + 1, 0.0);  // I_k / I_{k-1}
    double r = 0.0;
    for (std::size_t k = start; k >= 1; --k) {
        r = 1.0 / (2.0 * static_cast<double>(k) / x + r);
        if (k <= terms) bessel_ratio[k] = r;
    }

    double ik = bessel_i0_scaled(x);  // e^{-x} I_k(x), k = 0
    double weight = 1.0;              // ratio^k
    double sum = upper ? ik : 0.0;
    for (std::size_t k = 1; k <= terms; ++k) {
        ik *= bessel_ratio[k];
        weight *= ratio;
        const double term = weight * ik;
        sum += term;
        if (term <= 1e-16 * sum) break;
    }

    const double direct = std::clamp(prefactor * sum, 0.0, 1.0);
    return upper ? MarcumQ1{direct, 1.0 - direct} : MarcumQ1{1.0 - direct, direct};
}

inline double marcum_q1(double a, double b) { return marcum_q1_pair(a, b).q; }

/// 1 - Q1(a, b), i.e. the Rician CDF in normalized units.
inline double marcum_q1_complement(double a, double b) { return marcum_q1_pair(a, b).p; }

/// Draw from Exp(rate): CDF 1 - exp(-rate x).
inline double sample_exponential(double rate, RandomStream& rng) {
    if (!std::isfinite(rate) || rate <= 0.0)
        throw std::domain_error("sample_exponential: rate must be positive");
    return -std::log(rng.uniform()) / rate;
}

/// Rician amplitude sqrt((s + sqrt(N) Z1)^2 + (sqrt(N) Z2)^2).
inline double sample_rician(const RicianParams& params, RandomStream& rng) {
    validate(params);
    const auto [z1, z2] = rng.standard_normal_pair();
    const double sigma = std::sqrt(params.n);
    return std::hypot(params.s + sigma * z1, sigma * z2);
}

}  // namespace rfvlc

#endif  // RFVLC_SPECFUN_HPP
