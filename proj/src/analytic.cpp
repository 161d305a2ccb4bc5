#include "hapseh/analytic.hpp"

#include "hapseh/errors.hpp"
#include "hapseh/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

namespace hapseh::analytic {

namespace {

constexpr double kInstabilityBand = 1e-6;

} // namespace

void PerfQuery::validate() const {
    if (!(rate_bpcu > 0.0) || !std::isfinite(rate_bpcu)) throw ParameterError("query: R_b must be positive");
    if (std::isnan(avg_snr_db) || avg_snr_db == std::numeric_limits<double>::infinity())
        throw ParameterError("query: average SNR must be finite or -inf");
    nak.validate();
    sr.validate();
    sr_derived(sr);
}

double PerfQuery::avg_snr_linear() const {
    if (avg_snr_db == -std::numeric_limits<double>::infinity()) return 0.0;
    return std::pow(10.0, avg_snr_db / 10.0);
}

double gamma_threshold(double rate_bpcu) {
    if (!(rate_bpcu > 0.0)) throw ParameterError("gamma_threshold: R_b must be positive");
    return std::exp2(2.0 * rate_bpcu) - 1.0;
}

OutageTerms outage_terms(const PerfQuery& q) {
    q.validate();
    OutageTerms terms;
    terms.mass_term = shadowed_rician_mass_series(q.sr);

    const double snr = q.avg_snr_linear();
    const double z = gamma_threshold(q.rate_bpcu) / snr;
    if (!std::isfinite(z)) return terms;  // γ̄0 = 0: never above threshold

    const SrDerived d = sr_derived(q.sr);
    const double lam = d.lambda();
    const double s = q.nak.two_sigma_sq;
    const int m1 = q.nak.m1;
    const int m2 = q.sr.m2;

    const double bessel_arg = 2.0 * std::sqrt(z * lam / s);
    const int max_order = std::max(m1, std::abs(m1 - (m2 - 1)));
    const auto log_k = specfun::log_bessel_k_orders(max_order, bessel_arg);

    const double log_z = std::log(z);
    const double log_lam = std::log(lam);
    const double log_s = std::log(s);
    const double log_prefactor = std::log(2.0 * d.alpha) - specfun::ln_gamma(m1) - m1 * log_s;

    // c_k = (1-m2)_k (-δ)^k, tracked as sign and log-magnitude.
    specfun::CompensatedSum sum;
    double log_c = 0.0;
    int sign_c = 1;
    for (int k = 0; k < m2; ++k) {
        if (k > 0) {
            const double factor = (1.0 - m2 + (k - 1)) * (-d.delta);
            if (factor == 0.0) break;
            log_c += std::log(std::abs(factor));
            if (factor < 0.0) sign_c = -sign_c;
        }
        for (int i = 0; i <= k; ++i) {
            const double log_term = log_prefactor + log_c - specfun::ln_gamma(i + 1.0) - specfun::ln_gamma(k + 1.0)
                                    + 0.5 * (m1 + i) * log_z + 0.5 * (m1 + i - 2 * k - 2) * log_lam
                                    + 0.5 * (m1 - i) * log_s + log_k[static_cast<std::size_t>(std::abs(m1 - i))];
            sum.add(sign_c * std::exp(log_term));
        }
    }
    terms.bessel_term = sum.value();
    return terms;
}

double outage_probability(const PerfQuery& q) {
    q.validate();
    if (gamma_threshold(q.rate_bpcu) / q.avg_snr_linear() == 0.0) return 0.0;
    const double raw = outage_terms(q).raw();
    if (!(raw >= -kInstabilityBand && raw <= 1.0 + kInstabilityBand))
        throw NumericInstabilityError("outage_probability: unclamped value " + std::to_string(raw)
                                          + " outside [0, 1] beyond rounding budget",
                                      raw);
    return std::clamp(raw, 0.0, 1.0);
}

double mean_gamma0(const PerfQuery& q) {
    q.validate();
    return q.avg_snr_linear() * q.nak.mean_power() * shadowed_rician_mean_series(q.sr);
}

double ergodic_capacity_upper(const PerfQuery& q) { return std::log2(1.0 + mean_gamma0(q)); }

double throughput(const PerfQuery& q) { return q.rate_bpcu * (1.0 - outage_probability(q)); }

PerfPoint evaluate(const PerfQuery& q) {
    PerfPoint p;
    p.outage = outage_probability(q);
    p.ec_upper_bpcu = ergodic_capacity_upper(q);
    p.throughput_bpcu = q.rate_bpcu * (1.0 - p.outage);
    return p;
}

double effective_snr_db(double axis_db, double eta, double rho, bool axis_includes_eta, double extra_loss_db) {
    if (!(eta > 0.0 && eta <= 1.0)) throw ParameterError("effective_snr_db: eta must lie in (0, 1]");
    if (!(rho > 0.0 && rho < 1.0)) throw ParameterError("effective_snr_db: rho must lie in (0, 1)");
    if (axis_includes_eta) return axis_db - extra_loss_db;
    return axis_db + 10.0 * std::log10(eta) + 10.0 * std::log10(rho / (1.0 - rho)) - extra_loss_db;
}

} // namespace hapseh::analytic
