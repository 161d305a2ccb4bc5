#pragma once

#include "hapseh/channel.hpp"

namespace hapseh::analytic {

/// One evaluation point: average SNR γ̄0 (dB), target rate R_b and the two
/// fading laws. avg_snr_db = -inf encodes γ̄0 = 0.
struct PerfQuery {
    double avg_snr_db = 0.0;
    double rate_bpcu = 1.0;
    NakagamiPowerParams nak;
    ShadowedRicianParams sr;

    void validate() const;
    double avg_snr_linear() const;
};

struct PerfPoint {
    double outage = 0.0;
    double ec_upper_bpcu = 0.0;
    double throughput_bpcu = 0.0;
};

/// The two summands of the closed-form outage probability, before the
/// difference is taken and clamped.
struct OutageTerms {
    double mass_term = 0.0;    ///< SR total mass, analytically 1
    double bessel_term = 0.0;  ///< Pr[γ0 > γth]
    double raw() const noexcept { return mass_term - bessel_term; }
};

/// γth = 2^{2 R_b} - 1.
double gamma_threshold(double rate_bpcu);

OutageTerms outage_terms(const PerfQuery& q);

/// Closed-form Pr[γ̄0 X Y <= γth]. Throws NumericInstabilityError when the
/// unclamped value leaves [-1e-6, 1 + 1e-6].
double outage_probability(const PerfQuery& q);

/// E[γ0] = γ̄0 Ω_X E[Y], with E[Y] from the term-by-term series and
/// Ω_X = m1·2σ² the Nakagami mean power.
double mean_gamma0(const PerfQuery& q);

/// Jensen bound log2(1 + E[γ0]).
double ergodic_capacity_upper(const PerfQuery& q);

/// R_b (1 - P_out).
double throughput(const PerfQuery& q);

PerfPoint evaluate(const PerfQuery& q);

/// Maps a plotted SNR axis value to the γ̄0 fed to the formulas. The axis is a
/// reference at η = 1, ρ = 0.5 and clear sky; η, ρ/(1-ρ) and any extra
/// ground-hop loss (rain) then shift it in dB. With axis_includes_eta the axis
/// is already the effective value and only the extra loss applies.
double effective_snr_db(double axis_db, double eta, double rho, bool axis_includes_eta,
                        double extra_loss_db = 0.0);

} // namespace hapseh::analytic
