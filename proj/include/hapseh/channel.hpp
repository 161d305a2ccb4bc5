#pragma once

#include <cmath>
#include <random>

namespace hapseh {

/// Power gain X = |g1|^2 of the Nakagami-m inter-HAPS hop: a gamma law with
/// integer shape m1 and scale 2σ². Its mean m1·2σ² is the Ω_X used by the
/// capacity formulas.
struct NakagamiPowerParams {
    int m1 = 1;
    double two_sigma_sq = 1.0;

    /// 2σ² = 1/m1, so that E[X] = 1.
    static NakagamiPowerParams unit_mean(int m1) { return {m1, 1.0 / m1}; }

    double mean_power() const noexcept { return m1 * two_sigma_sq; }
    void validate() const;

    friend bool operator==(const NakagamiPowerParams&, const NakagamiPowerParams&) = default;
};

/// Shadowed-Rician HAPS-to-ground hop: multipath half-power b, integer
/// shadowing severity m2 and average LOS power Ω. E[Y] = 2b + Ω; the law is
/// deliberately not renormalized to unit mean.
struct ShadowedRicianParams {
    double b = 0.063;
    int m2 = 1;
    double omega = 8.94e-4;

    double mean_power() const noexcept { return 2.0 * b + omega; }
    void validate() const;

    friend bool operator==(const ShadowedRicianParams&, const ShadowedRicianParams&) = default;
};

/// Closed-form constants of the shadowed-Rician density
/// f_Y(y) = α exp(-βy) ₁F₁(m2; 1; δy).
struct SrDerived {
    double alpha;
    double beta;
    double delta;

    /// β - δ, the decay rate left after Kummer's transformation.
    double lambda() const noexcept { return beta - delta; }
};

/// Throws ParameterError on corrupt parameters, including β <= δ.
SrDerived sr_derived(const ShadowedRicianParams& p);

double nakagami_power_pdf(const NakagamiPowerParams& p, double x);
double shadowed_rician_pdf(const ShadowedRicianParams& p, double y);

/// α Σ_k (1-m2)_k (-δ)^k / (k! (β-δ)^{k+1}): the total mass of f_Y integrated
/// term by term. Equals 1 for every valid parameter set.
double shadowed_rician_mass_series(const ShadowedRicianParams& p);

/// α/(β-δ)² Σ_k (1-m2)_k (k+1)/k! (δ/(δ-β))^k: E[Y] integrated term by term.
double shadowed_rician_mean_series(const ShadowedRicianParams& p);

template <class Rng>
double sample_nakagami_power(const NakagamiPowerParams& p, Rng& rng) {
    std::gamma_distribution<double> gamma(p.m1, p.two_sigma_sq);
    return gamma(rng);
}

/// Y = |A + S|², with S circularly-symmetric complex Gaussian of per-component
/// variance b and A a real LOS amplitude, A² ~ Gamma(m2, Ω/m2).
template <class Rng>
double sample_shadowed_rician_power(const ShadowedRicianParams& p, Rng& rng) {
    double los = 0.0;
    if (p.omega > 0.0) {
        std::gamma_distribution<double> gamma(p.m2, p.omega / p.m2);
        los = std::sqrt(gamma(rng));
    }
    std::normal_distribution<double> normal(0.0, std::sqrt(p.b));
    const double re = los + normal(rng);
    const double im = normal(rng);
    return re * re + im * im;
}

} // namespace hapseh
