#include "hapseh/montecarlo.hpp"

#include "hapseh/errors.hpp"
#include "hapseh/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace hapseh::mc {

namespace {

constexpr std::size_t kChunk = 4096;

// Pairwise sum of the per-chunk sums, both taken in index order. The shape of
// the reduction tree depends only on n.
template <class Term>
double ordered_sum(std::size_t n, Term&& term) {
    std::vector<double> partial;
    partial.reserve(n / kChunk + 1);
    for (std::size_t lo = 0; lo < n; lo += kChunk) {
        const std::size_t hi = std::min(n, lo + kChunk);
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += term(i);
        partial.push_back(s);
    }
    while (partial.size() > 1) {
        std::size_t w = 0;
        for (std::size_t i = 0; i + 1 < partial.size(); i += 2) partial[w++] = partial[i] + partial[i + 1];
        if (partial.size() % 2 == 1) partial[w++] = partial.back();
        partial.resize(w);
    }
    return partial.empty() ? 0.0 : partial.front();
}

McEstimate sample_mean(std::size_t n, const std::vector<double>& z, auto&& g) {
    const double mean = ordered_sum(n, [&](std::size_t i) { return g(z[i]); }) / static_cast<double>(n);
    const double ss = ordered_sum(n, [&](std::size_t i) {
        const double d = g(z[i]) - mean;
        return d * d;
    });
    McEstimate e;
    e.value = mean;
    e.trials = n;
    e.std_error = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
    return e;
}

template <class Draw>
std::vector<double> parallel_fill(const McConfig& mc, Draw&& draw) {
    mc.validate();
    std::vector<double> out(mc.trials);
    unsigned workers = mc.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : mc.workers;
    const std::uint64_t batches = (mc.trials + mc.batch - 1) / mc.batch;
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, batches));

    std::atomic<std::uint64_t> next{0};
    auto run = [&] {
        for (std::uint64_t b = next++; b < batches; b = next++) {
            const std::uint64_t lo = b * mc.batch;
            const std::uint64_t hi = std::min(mc.trials, lo + mc.batch);
            for (std::uint64_t i = lo; i < hi; ++i) out[i] = draw(i);
        }
    };
    if (workers <= 1) {
        run();
        return out;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    return out;
}

} // namespace

void McConfig::validate() const {
    if (trials < 1000) throw ParameterError("mc: trials must be >= 1000");
    if (batch < 1) throw ParameterError("mc: batch must be >= 1");
}

std::vector<double> sample_products(const NakagamiPowerParams& nak, const ShadowedRicianParams& sr,
                                    const McConfig& mc) {
    nak.validate();
    sr.validate();
    return parallel_fill(mc, [&](std::uint64_t i) {
        auto gx = substream(mc.seed, StreamTag::nakagami, i);
        auto gy = substream(mc.seed, StreamTag::shadowed_rician, i);
        return sample_nakagami_power(nak, gx) * sample_shadowed_rician_power(sr, gy);
    });
}

std::vector<double> sample_shadowed_rician(const ShadowedRicianParams& sr, const McConfig& mc) {
    sr.validate();
    return parallel_fill(mc, [&](std::uint64_t i) {
        auto gy = substream(mc.seed, StreamTag::shadowed_rician, i);
        return sample_shadowed_rician_power(sr, gy);
    });
}

McEstimate outage_at_threshold(const std::vector<double>& z, double avg_snr_linear, double gamma_th) {
    if (z.empty()) throw ParameterError("mc: empty sample");
    std::uint64_t hits = 0;
    for (double v : z) hits += (avg_snr_linear * v <= gamma_th) ? 1 : 0;
    const double n = static_cast<double>(z.size());
    McEstimate e;
    e.trials = z.size();
    e.value = static_cast<double>(hits) / n;
    e.std_error = std::sqrt(e.value * (1.0 - e.value) / n);
    e.rare_event = e.value < rare_event_threshold;
    return e;
}

McEstimate outage_from_samples(const std::vector<double>& z, double avg_snr_linear, double rate_bpcu) {
    return outage_at_threshold(z, avg_snr_linear, analytic::gamma_threshold(rate_bpcu));
}

McEstimate ergodic_capacity_from_samples(const std::vector<double>& z, double avg_snr_linear) {
    if (z.empty()) throw ParameterError("mc: empty sample");
    return sample_mean(z.size(), z, [avg_snr_linear](double v) { return std::log2(1.0 + avg_snr_linear * v); });
}

McEstimate mean_from_samples(const std::vector<double>& z, double scale) {
    if (z.empty()) throw ParameterError("mc: empty sample");
    return sample_mean(z.size(), z, [scale](double v) { return scale * v; });
}

McEstimate throughput_from_outage(const McEstimate& outage, double rate_bpcu) {
    McEstimate e = outage;
    e.value = rate_bpcu * (1.0 - outage.value);
    e.std_error = rate_bpcu * outage.std_error;
    return e;
}

McEstimate mc_outage(const analytic::PerfQuery& q, const McConfig& mc) {
    q.validate();
    return outage_from_samples(sample_products(q.nak, q.sr, mc), q.avg_snr_linear(), q.rate_bpcu);
}

McEstimate mc_ergodic_capacity(const analytic::PerfQuery& q, const McConfig& mc) {
    q.validate();
    return ergodic_capacity_from_samples(sample_products(q.nak, q.sr, mc), q.avg_snr_linear());
}

McEstimate mc_throughput(const analytic::PerfQuery& q, const McConfig& mc) {
    return throughput_from_outage(mc_outage(q, mc), q.rate_bpcu);
}

McEstimate mc_mean_gamma0(const analytic::PerfQuery& q, const McConfig& mc) {
    q.validate();
    return mean_from_samples(sample_products(q.nak, q.sr, mc), q.avg_snr_linear());
}

double ks_statistic(const std::vector<double>& sorted, const std::vector<double>& cdf) {
    if (sorted.empty() || sorted.size() != cdf.size()) throw ParameterError("ks_statistic: size mismatch");
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i > 0 && sorted[i] < sorted[i - 1]) throw ParameterError("ks_statistic: sample must be ascending");
        d = std::max({d, static_cast<double>(i + 1) / n - cdf[i], cdf[i] - static_cast<double>(i) / n});
    }
    return d;
}

} // namespace hapseh::mc
