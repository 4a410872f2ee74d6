// SPDX-License-Identifier: Apache-2.0
//
// Reference evaluations by numerical integration. These deliberately avoid
// the library's own series code (Bessel values come from
// std::cyl_bessel_i) and back the unit tests and `rfvlc selftest`.

#ifndef RFVLC_VERIFY_HPP
#define RFVLC_VERIFY_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rfvlc::verify {

namespace detail {

// 7-point Gauss / 15-point Kronrod nodes and weights on [-1, 1].
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
double adaptive(const F& f, double lo, double hi, double tol, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double kronrod = kKronrodWeights[7] * f(mid);
    double gauss = kGaussWeights[3] * f(mid);
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kKronrodNodes[i];
        const double pair = f(mid - dx) + f(mid + dx);
        kronrod += kKronrodWeights[i] * pair;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
    }
    kronrod *= half;
    gauss *= half;
    if (std::abs(kronrod - gauss) <= tol || depth <= 0) return kronrod;
    return adaptive(f, lo, mid, 0.5 * tol, depth - 1) + adaptive(f, mid, hi, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod (G7/K15) integral of f over [lo, hi] to an
/// absolute tolerance.
template <class F>
double integrate(const F& f, double lo, double hi, double tol = 1e-13) {
    if (hi <= lo) return 0.0;
    return detail::adaptive(f, lo, hi, tol, 40);
}

/// Rician density in Marcum-normalized units, x exp(-(x^2 + a^2)/2) I0(a x),
/// evaluated in log space to survive large arguments.
inline double rician_density_normalized(double a, double x) {
    if (x <= 0.0) return 0.0;
    const double ax = a * x;
    if (ax > 700.0) throw std::domain_error("rician_density_normalized: a*x beyond oracle range");
    return x * std::exp(-0.5 * (x * x + a * a) + std::log(std::cyl_bessel_i(0.0, ax)));
}

/// Q1(a, b) = integral_b^inf x exp(-(x^2 + a^2)/2) I0(a x) dx. The density
/// is negligible (< e^{-800}) beyond max(a, b) + 40.
inline double marcum_q1_quadrature(double a, double b, double tol = 1e-13) {
    const auto f = [a](double x) { return rician_density_normalized(a, x); };
    const double upper = std::max(a, b) + 40.0;
    // Split at the density peak so the adaptive rule sees it.
    if (b < a) return integrate(f, b, a, tol / 2) + integrate(f, a, upper, tol / 2);
    return integrate(f, b, upper, tol);
}

/// integral_0^b of the same density.
inline double rician_cdf_quadrature(double a, double b, double tol = 1e-13) {
    const auto f = [a](double x) { return rician_density_normalized(a, x); };
    if (a > 0.0 && a < b) return integrate(f, 0.0, a, tol / 2) + integrate(f, a, b, tol / 2);
    return integrate(f, 0.0, b, tol);
}

/// I0(x) = (1/pi) integral_0^pi exp(x cos t) dt by the trapezoid rule, which
/// is spectrally accurate for this periodic integrand.
inline double bessel_i0_trapezoid(double x, int points = 400) {
    const double h = std::numbers::pi / points;
    double sum = 0.5 * (std::exp(x) + std::exp(-x));
    for (int i = 1; i < points; ++i) sum += std::exp(x * std::cos(i * h));
    return sum * h / std::numbers::pi;
}

}  // namespace rfvlc::verify

#endif  // RFVLC_VERIFY_HPP
