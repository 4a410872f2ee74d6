// SPDX-License-Identifier: Apache-2.0
//
// Direct link-level simulation of the network: every trial draws the
// interference channels, clips the transmit powers, draws the three
// per-link SINRs and applies the decode-and-forward / best-branch rule.
// Nothing here touches the closed forms, so it serves as their oracle.

#ifndef RFVLC_MONTECARLO_HPP
#define RFVLC_MONTECARLO_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rfvlc/analysis.hpp"
#include "rfvlc/channel.hpp"
#include "rfvlc/parallel.hpp"
#include "rfvlc/random.hpp"

namespace rfvlc {

/// Trials per random sub-stream. Chunk c always uses stream (seed, c), so
/// the result does not depend on how chunks are spread over threads.
inline constexpr std::uint64_t kChunkTrials = std::uint64_t{1} << 16;
inline constexpr std::uint64_t kMinTrials = 10'000;
inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

/// Monte Carlo estimate. For probabilities std_error is
/// sqrt(p(1 - p) / n); for sample means it is the sample standard error.
struct McEstimate {
    double estimate = 0.0;
    std::uint64_t n_samples = 0;
    double std_error = 0.0;
    std::uint64_t seed = 0;
    double wall_time = 0.0;  // s
};

/// SINRs of one trial.
struct TrialSnrs {
    double relay = 0.0;     // gamma_R
    double dest_rf = 0.0;   // gamma_D^RF
    double dest_vlc = 0.0;  // gamma_D^VLC

    double end_to_end() const { return std::min(relay, std::max(dest_rf, dest_vlc)); }
    double end_to_end_rf() const { return std::min(relay, dest_rf); }
};

/// Draws trials for one scenario. Every trial consumes the same variates in
/// the same order (|h_SU|^2, |h_RU|^2, |h~_SR|^2, |h~_RD|^2, g~_R) whether
/// or not a branch is used, which keeps mixed and RF-only counts on common
/// random numbers.
class TrialSampler {
public:
    explicit TrialSampler(const Scenario& s)
        : scenario_(s), source_(s.source_constraint()), relay_(s.relay_constraint()),
          vlc_(link_budget(s.rd_vlc)) {}

    TrialSnrs draw(RandomStream& rng) const {
        const double h_su = sample_exponential(source_.rate, rng);
        const double h_ru = sample_exponential(relay_.rate, rng);
        const double p_s = effective_tx_power(source_, h_su);
        const double p_r = effective_tx_power(relay_, h_ru);
        TrialSnrs t;
        t.relay = draw_rf_sinr(scenario_.sr, p_s, rng);
        t.dest_rf = draw_rf_sinr(scenario_.rd_rf, p_r, rng);
        t.dest_vlc = vlc_.snr(scenario_.p_t, sample_rician(vlc_.turbulence, rng));
        return t;
    }

private:
    Scenario scenario_;
    PowerConstraint source_;
    PowerConstraint relay_;
    VlcLinkBudget vlc_;
};

/// Outage counts of the mixed system and the RF/RF baseline on shared draws.
struct OutageCounts {
    std::uint64_t trials = 0;
    std::uint64_t mixed = 0;
    std::uint64_t rf_rf = 0;
};

namespace detail {

inline void require_trials(std::uint64_t n) {
    if (n < kMinTrials) throw std::invalid_argument("Monte Carlo needs at least 10^4 trials");
}

inline std::uint64_t chunk_count(std::uint64_t n) { return (n + kChunkTrials - 1) / kChunkTrials; }

inline std::uint64_t chunk_size(std::uint64_t n, std::uint64_t chunk) {
    return std::min(kChunkTrials, n - chunk * kChunkTrials);
}

inline McEstimate proportion(std::uint64_t hits, std::uint64_t n, std::uint64_t seed, double seconds) {
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    return {p, n, std::sqrt(p * (1.0 - p) / static_cast<double>(n)), seed, seconds};
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

inline OutageCounts count_outages(const Scenario& s, double v, std::uint64_t n_samples,
                                  std::uint64_t seed, unsigned threads = 1) {
    detail::require_trials(n_samples);
    const TrialSampler sampler(s);
    const std::uint64_t chunks = detail::chunk_count(n_samples);
    std::vector<OutageCounts> partial(chunks);
    parallel_for(chunks, threads, [&](std::size_t c) {
        RandomStream rng(seed, c);
        OutageCounts& out = partial[c];
        out.trials = detail::chunk_size(n_samples, c);
        for (std::uint64_t i = 0; i < out.trials; ++i) {
            const TrialSnrs t = sampler.draw(rng);
            if (t.end_to_end() < v) ++out.mixed;
            if (t.end_to_end_rf() < v) ++out.rf_rf;
        }
    });
    OutageCounts total;
    for (const auto& p : partial) {
        total.trials += p.trials;
        total.mixed += p.mixed;
        total.rf_rf += p.rf_rf;
    }
    return total;
}

/// Pr(min(gamma_R, max(gamma_D^RF, gamma_D^VLC)) < v).
inline McEstimate simulate_outage(const Scenario& s, double v, std::uint64_t n_samples,
                                  std::uint64_t seed, unsigned threads = 1) {
    const auto t0 = std::chrono::steady_clock::now();
    const OutageCounts c = count_outages(s, v, n_samples, seed, threads);
    return detail::proportion(c.mixed, c.trials, seed, detail::seconds_since(t0));
}

/// Pr(min(gamma_R, gamma_D^RF) < v): the same draws with the VLC branch ignored.
inline McEstimate simulate_rf_rf_outage(const Scenario& s, double v, std::uint64_t n_samples,
                                        std::uint64_t seed, unsigned threads = 1) {
    const auto t0 = std::chrono::steady_clock::now();
    const OutageCounts c = count_outages(s, v, n_samples, seed, threads);
    return detail::proportion(c.rf_rf, c.trials, seed, detail::seconds_since(t0));
}

/// Sample mean of log2(1 + gamma^DF) / 2.
inline McEstimate simulate_ergodic_rate(const Scenario& s, std::uint64_t n_samples,
                                        std::uint64_t seed, unsigned threads = 1) {
    detail::require_trials(n_samples);
    const auto t0 = std::chrono::steady_clock::now();
    const TrialSampler sampler(s);
    const std::uint64_t chunks = detail::chunk_count(n_samples);
    struct Moments {
        double sum = 0.0;
        double sum_sq = 0.0;
    };
    std::vector<Moments> partial(chunks);
    parallel_for(chunks, threads, [&](std::size_t c) {
        RandomStream rng(seed, c);
        Moments& m = partial[c];
        const std::uint64_t size = detail::chunk_size(n_samples, c);
        for (std::uint64_t i = 0; i < size; ++i) {
            const double r = 0.5 * std::log2(1.0 + sampler.draw(rng).end_to_end());
            m.sum += r;
            m.sum_sq += r * r;
        }
    });
    Moments total;
    for (const auto& m : partial) {
        total.sum += m.sum;
        total.sum_sq += m.sum_sq;
    }
    const auto n = static_cast<double>(n_samples);
    const double mean = total.sum / n;
    const double var = std::max(0.0, (total.sum_sq - n * mean * mean) / (n - 1.0));
    return {mean, n_samples, std::sqrt(var / n), seed, detail::seconds_since(t0)};
}

}  // namespace rfvlc

#endif  // RFVLC_MONTECARLO_HPP
