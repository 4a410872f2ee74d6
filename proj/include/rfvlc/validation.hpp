// SPDX-License-Identifier: Apache-2.0
//
// Closed form vs. simulation gate over a grid of cases, CSI error levels and
// transmit SNRs.

#ifndef RFVLC_VALIDATION_HPP
#define RFVLC_VALIDATION_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "rfvlc/analysis.hpp"
#include "rfvlc/config.hpp"
#include "rfvlc/montecarlo.hpp"
#include "rfvlc/parallel.hpp"

namespace rfvlc {

struct OracleCell {
    ItcCase itc_case = ItcCase::case1;
    double csi_err_var = 0.0;
    double tx_snr_db = 0.0;
    double closed_form = 0.0;
    McEstimate simulated;
    double sigma = 0.0;  // standard error used for the comparison
    bool pass = false;
};

struct OracleGridReport {
    std::vector<OracleCell> cells;
    std::size_t failures = 0;
    std::size_t allowed_failures = 0;
    bool pass() const { return failures <= allowed_failures; }
};

/// Standard error for comparing a closed form p against an estimate from n
/// trials: the larger of the empirical one and sqrt(p(1 - p)/n). The second
/// keeps cells whose outage is far below 1/n (empirical SE of 0) testable.
inline double comparison_sigma(double closed_form, const McEstimate& e) {
    const double p = std::clamp(closed_form, 0.0, 1.0);
    return std::max(e.std_error, std::sqrt(p * (1.0 - p) / static_cast<double>(e.n_samples)));
}

/// Number of 3-sigma misses tolerated among `cells` independent checks:
/// the smallest k with Pr(Binomial(cells, 0.0027) > k) < 1%.
inline std::size_t allowed_misses(std::size_t cells) {
    constexpr double miss = 0.0027;
    double pmf = std::pow(1.0 - miss, static_cast<double>(cells));
    double cdf = pmf;
    std::size_t k = 0;
    while (1.0 - cdf >= 0.01 && k < cells) {
        pmf *= static_cast<double>(cells - k) / static_cast<double>(k + 1) * miss / (1.0 - miss);
        ++k;
        cdf += pmf;
    }
    return k;
}

/// Every (case, sigma_eps^2, xi) cell: closed-form outage vs. simulate_outage
/// with `n_samples` trials, passing when within 3 standard errors.
inline OracleGridReport run_oracle_grid(const RunConfig& base, const std::vector<ItcCase>& cases,
                                        const std::vector<double>& csi_levels,
                                        const std::vector<double>& tx_snr_dbs, std::uint64_t n_samples,
                                        std::uint64_t seed, unsigned threads = 1) {
    OracleGridReport report;
    for (ItcCase c : cases)
        for (double eps : csi_levels)
            for (double xi : tx_snr_dbs) {
                OracleCell cell;
                cell.itc_case = c;
                cell.csi_err_var = eps;
                cell.tx_snr_db = xi;
                report.cells.push_back(cell);
            }

    parallel_for(report.cells.size(), threads, [&](std::size_t i) {
        OracleCell& cell = report.cells[i];
        Scenario s = base.scenario;
        s.itc_case = cell.itc_case;
        apply_csi_err_var(s, cell.csi_err_var);
        apply_tx_snr_db(s, cell.tx_snr_db);
        const double v = base.query.v;
        cell.closed_form = outage_probability(s, v);
        cell.simulated = simulate_outage(s, v, n_samples, seed + i);
        cell.sigma = comparison_sigma(cell.closed_form, cell.simulated);
        cell.pass = std::abs(cell.closed_form - cell.simulated.estimate) <= 3.0 * cell.sigma;
    });

    for (const auto& cell : report.cells) report.failures += cell.pass ? 0 : 1;
    report.allowed_failures = allowed_misses(report.cells.size());
    return report;
}

}  // namespace rfvlc

#endif  // RFVLC_VALIDATION_HPP
