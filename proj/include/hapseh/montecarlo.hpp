#pragma once

#include "hapseh/analytic.hpp"
#include "hapseh/channel.hpp"

#include <cstdint>
#include <vector>

// Direct simulation of γ0 = γ̄0 X Y. Trial i draws X and Y from substreams
// addressed by (seed, tag, i), and all reductions run over fixed-size chunks
// in index order, so results are bit-identical for any workers/batch setting.

namespace hapseh::mc {

struct McConfig {
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    unsigned workers = 1;     ///< 0 picks std::thread::hardware_concurrency()
    std::uint64_t batch = 65'536;  ///< trials handed to a worker at a time

    void validate() const;
};

/// Below this the outage estimate at the configured trial count is flagged
/// as unreliable.
inline constexpr double rare_event_threshold = 1e-4;

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
    bool rare_event = false;
};

/// Z_i = X_i Y_i for i < trials, in trial order.
std::vector<double> sample_products(const NakagamiPowerParams& nak, const ShadowedRicianParams& sr,
                                    const McConfig& mc);

/// Estimators over an existing sample of Z, so one draw can serve a whole
/// SNR/rate grid.
McEstimate outage_from_samples(const std::vector<double>& z, double avg_snr_linear, double rate_bpcu);
/// Fraction of trials with γ̄0 Z <= γth, binomial standard error.
McEstimate outage_at_threshold(const std::vector<double>& z, double avg_snr_linear, double gamma_th);
McEstimate ergodic_capacity_from_samples(const std::vector<double>& z, double avg_snr_linear);
McEstimate mean_from_samples(const std::vector<double>& z, double scale);
McEstimate throughput_from_outage(const McEstimate& outage, double rate_bpcu);

McEstimate mc_outage(const analytic::PerfQuery& q, const McConfig& mc);
McEstimate mc_ergodic_capacity(const analytic::PerfQuery& q, const McConfig& mc);
McEstimate mc_throughput(const analytic::PerfQuery& q, const McConfig& mc);
/// Sample mean of γ0.
McEstimate mc_mean_gamma0(const analytic::PerfQuery& q, const McConfig& mc);

/// Plain shadowed-Rician draws, trial order; used by the sampler KS check.
std::vector<double> sample_shadowed_rician(const ShadowedRicianParams& sr, const McConfig& mc);

/// Kolmogorov-Smirnov D_n of an ascending sample against model CDF values
/// taken at the same points.
double ks_statistic(const std::vector<double>& sorted, const std::vector<double>& cdf);

} // namespace hapseh::mc
