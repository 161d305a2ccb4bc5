#include "hapseh/channel.hpp"

#include "hapseh/errors.hpp"
#include "hapseh/specfun.hpp"

#include <string>

namespace hapseh {

void NakagamiPowerParams::validate() const {
    if (m1 < 1) throw ParameterError("nakagami: m1 must be an integer >= 1, got " + std::to_string(m1));
    if (!(two_sigma_sq > 0.0) || !std::isfinite(two_sigma_sq))
        throw ParameterError("nakagami: 2*sigma^2 must be positive and finite");
}

void ShadowedRicianParams::validate() const {
    if (!(b > 0.0) || !std::isfinite(b)) throw ParameterError("shadowed-rician: b must be positive and finite");
    if (m2 < 1) throw ParameterError("shadowed-rician: m2 must be an integer >= 1, got " + std::to_string(m2));
    if (!(omega >= 0.0) || !std::isfinite(omega))
        throw ParameterError("shadowed-rician: omega must be non-negative and finite");
}

SrDerived sr_derived(const ShadowedRicianParams& p) {
    if (!(p.b > 0.0) || p.m2 < 1 || !std::isfinite(p.omega))
        throw ParameterError("shadowed-rician: corrupt parameters (b > 0 and integer m2 >= 1 required)");
    const double two_b = 2.0 * p.b;
    const double denom = two_b * p.m2 + p.omega;
    SrDerived d{};
    d.alpha = std::pow(two_b * p.m2 / denom, p.m2) / two_b;
    d.beta = 1.0 / two_b;
    d.delta = p.omega / (two_b * denom);
    if (!(d.beta > d.delta) || !(d.alpha > 0.0) || !(d.delta >= 0.0) || !std::isfinite(d.alpha))
        throw ParameterError("shadowed-rician: derived constants violate beta > delta >= 0, alpha > 0 (b="
                             + std::to_string(p.b) + ", m2=" + std::to_string(p.m2)
                             + ", omega=" + std::to_string(p.omega) + ")");
    return d;
}

double nakagami_power_pdf(const NakagamiPowerParams& p, double x) {
    p.validate();
    if (!(x >= 0.0)) throw DomainError("nakagami_power_pdf: x must be non-negative");
    const double s = p.two_sigma_sq;
    if (x == 0.0) return p.m1 == 1 ? 1.0 / s : 0.0;
    const double log_pdf = (p.m1 - 1) * std::log(x) - x / s - specfun::ln_gamma(p.m1) - p.m1 * std::log(s);
    return std::exp(log_pdf);
}

double shadowed_rician_pdf(const ShadowedRicianParams& p, double y) {
    p.validate();
    if (!(y >= 0.0)) throw DomainError("shadowed_rician_pdf: y must be non-negative");
    const SrDerived d = sr_derived(p);
    // Kummer form: α exp(-(β-δ)y) Σ_k (1-m2)_k (-δy)^k / (k!)²; the sum is
    // positive for y >= 0, so the log form is safe.
    const double poly = specfun::hyp1f1_finite_poly(p.m2, d.delta * y);
    return std::exp(std::log(d.alpha) - d.lambda() * y + std::log(poly));
}

double shadowed_rician_mass_series(const ShadowedRicianParams& p) {
    p.validate();
    const SrDerived d = sr_derived(p);
    const double lam = d.lambda();
    specfun::CompensatedSum sum;
    // term_k = (1-m2)_k (-δ)^k / (k! λ^{k+1})
    double term = 1.0 / lam;
    sum.add(term);
    for (int k = 0; k + 1 < p.m2; ++k) {
        term *= (1.0 - p.m2 + k) * (-d.delta) / ((k + 1.0) * lam);
        sum.add(term);
    }
    return d.alpha * sum.value();
}

double shadowed_rician_mean_series(const ShadowedRicianParams& p) {
    p.validate();
    const SrDerived d = sr_derived(p);
    const double lam = d.lambda();
    const double ratio = d.delta / (d.delta - d.beta);
    specfun::CompensatedSum sum;
    // (1-m2)_k ratio^k / k!, times (k+1)
    double base = 1.0;
    sum.add(base);
    for (int k = 0; k + 1 < p.m2; ++k) {
        base *= (1.0 - p.m2 + k) * ratio / (k + 1.0);
        sum.add(base * (k + 2.0));
    }
    return d.alpha / (lam * lam) * sum.value();
}

} // namespace hapseh
