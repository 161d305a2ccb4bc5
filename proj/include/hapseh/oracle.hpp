#pragma once

#include "hapseh/analytic.hpp"
#include "hapseh/channel.hpp"

#include <vector>

// Numerical-quadrature ground truth for the closed forms. Everything here
// integrates the densities directly and never calls the Bessel closed form.
// The shadowed-Rician density is evaluated through the plain ₁F₁ power
// series rather than the Kummer-transformed finite sum the channel module
// uses.

namespace hapseh::oracle {

struct QuadratureConfig {
    double rel_tol = 1e-11;
    double abs_tol = 1e-13;
    unsigned max_subdivisions = 1u << 14;
    /// Upper limit of the outer x-integral. 0 picks the point where the gamma
    /// survival function drops below abs_tol / 10.
    double outer_upper_cut = 0.0;

    void validate() const;
    QuadratureConfig halved() const;
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

enum class InnerMethod {
    nested_quadrature,
    incomplete_gamma,
};

/// ₁F₁(m; 1; z) by its defining power series Σ_j (m)_j z^j / (j!)².
double hyp1f1_series(int m, double z);

/// f_Y from the direct ₁F₁ series.
double sr_pdf_series(const ShadowedRicianParams& sr, double y);

/// Upper truncation point of X's gamma law (survival < mass).
double nakagami_tail_cut(const NakagamiPowerParams& nak, double mass);

/// Upper truncation point of Y (survival < mass), located by bisection on
/// the term-wise incomplete-gamma survival function.
double sr_tail_cut(const ShadowedRicianParams& sr, double mass);

/// F_Z(z) = ∫ f_X(x) F_Y(z/x) dx with F_Y assembled from the per-term inner
/// integrals ∫_0^{t} y^k e^{-(β-δ)y} dy. The integral over negative x in the
/// general product-CDF formula vanishes for non-negative power gains.
QuadResult cdf_z_quadrature(const NakagamiPowerParams& nak, const ShadowedRicianParams& sr, double z,
                            const QuadratureConfig& cfg = {}, InnerMethod inner = InnerMethod::incomplete_gamma);

/// Outage probability of a query through cdf_z_quadrature(γth / γ̄0).
QuadResult outage_quadrature(const analytic::PerfQuery& q, const QuadratureConfig& cfg = {},
                             InnerMethod inner = InnerMethod::incomplete_gamma);

/// E[XY] by nested two-dimensional quadrature.
QuadResult mean_z_quadrature(const NakagamiPowerParams& nak, const ShadowedRicianParams& sr,
                             const QuadratureConfig& cfg = {});

/// E[X]·E[Y], each by one-dimensional quadrature.
QuadResult mean_z_product(const NakagamiPowerParams& nak, const ShadowedRicianParams& sr,
                          const QuadratureConfig& cfg = {});

/// ∫_0^y f_Y.
QuadResult sr_cdf_quadrature(const ShadowedRicianParams& sr, double y, const QuadratureConfig& cfg = {});

/// F_Y at each point of an ascending sample, accumulated piece by piece
/// from the direct-series density.
std::vector<double> sr_cdf_sorted(const ShadowedRicianParams& sr, const std::vector<double>& sorted_y,
                                  const QuadratureConfig& cfg = {});

/// ∫ f_X over [0, ∞).
QuadResult nakagami_mass_quadrature(const NakagamiPowerParams& nak, const QuadratureConfig& cfg = {});

/// Exact ergodic capacity E[log2(1 + γ̄0 X Y)] by nested quadrature.
QuadResult ergodic_capacity_quadrature(const NakagamiPowerParams& nak, const ShadowedRicianParams& sr,
                                       double avg_snr_linear, const QuadratureConfig& cfg = {});

} // namespace hapseh::oracle
