#include "hapseh/oracle.hpp"

#include "hapseh/errors.hpp"
#include "hapseh/quadrature.hpp"
#include "hapseh/specfun.hpp"

#include <boost/math/distributions/gamma.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace hapseh::oracle {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Adaptive Gauss-Kronrod over consecutive breakpoints; the absolute
// tolerance is shared evenly between the pieces.
template <class F>
QuadResult integrate(F&& f, std::vector<double> points, const QuadratureConfig& cfg, const char* what) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    const double piece_abs_tol = cfg.abs_tol / static_cast<double>(std::max<std::size_t>(1, points.size() - 1));

    QuadResult out;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const quad::Result r = quad::integrate(f, points[i], points[i + 1], piece_abs_tol, cfg.rel_tol,
                                               cfg.max_subdivisions);
        if (!std::isfinite(r.value))
            throw ConvergenceError(std::string(what) + ": non-finite integrand", r.value,
                                   std::numeric_limits<double>::infinity());
        if (!r.converged)
            throw ConvergenceError(std::string(what) + ": tolerance not reached on [" + std::to_string(points[i]) + ", "
                                       + std::to_string(points[i + 1]) + "], error estimate " + std::to_string(r.error),
                                   out.value + r.value, out.error_estimate + r.error);
        out.value += r.value;
        out.error_estimate += r.error + 4.0 * kEps * r.l1;
    }
    return out;
}

// Breakpoints inside (0, cut) at fixed multiples of a scale, plus both ends.
std::vector<double> grid(double cut, std::initializer_list<double> scales, double unit) {
    std::vector<double> pts{0.0, cut};
    for (double s : scales) {
        const double p = s * unit;
        if (p > 0.0 && p < cut && std::isfinite(p)) pts.push_back(p);
    }
    return pts;
}

double gamma_pdf(const NakagamiPowerParams& nak, double x) {
    if (x <= 0.0) return nak.m1 == 1 ? 1.0 / nak.two_sigma_sq : 0.0;
    return boost::math::pdf(boost::math::gamma_distribution<double>(nak.m1, nak.two_sigma_sq), x);
}

struct SrConstants {
    double alpha, beta, delta, lambda;
    std::vector<double> inner_coef;  // α (1-m2)_k (-δ)^k / (k!)²
};

SrConstants sr_constants(const ShadowedRicianParams& sr) {
    sr.validate();
    const SrDerived d = sr_derived(sr);
    SrConstants c{d.alpha, d.beta, d.delta, d.lambda(), {}};
    double coef = d.alpha;
    for (int k = 0; k < sr.m2; ++k) {
        c.inner_coef.push_back(coef);
        coef *= (1.0 - sr.m2 + k) * (-d.delta) / ((k + 1.0) * (k + 1.0));
    }
    return c;
}

// F_Y(t) (or the survival function when upper is set) through
// ∫_0^t y^k e^{-λy} dy = k! λ^{-(k+1)} P(k+1, λt).
double sr_cdf_incgamma(const SrConstants& c, double t, bool upper) {
    if (t <= 0.0) return upper ? 1.0 : 0.0;
    double acc = 0.0;
    double kfact_over_lam = 1.0 / c.lambda;
    for (std::size_t k = 0; k < c.inner_coef.size(); ++k) {
        if (k > 0) kfact_over_lam *= static_cast<double>(k) / c.lambda;
        const double a = static_cast<double>(k) + 1.0;
        const double x = c.lambda * t;
        const double frac = !std::isfinite(x) ? (upper ? 0.0 : 1.0)
                            : upper           ? boost::math::gamma_q(a, x)
                                              : boost::math::gamma_p(a, x);
        acc += c.inner_coef[k] * kfact_over_lam * frac;
    }
    return acc;
}

// Same F_Y(t) with each inner integral done by adaptive quadrature.
double sr_cdf_nested(const SrConstants& c, double t, const QuadratureConfig& cfg) {
    if (t <= 0.0) return 0.0;
    QuadratureConfig inner = cfg;
    inner.rel_tol = std::max(cfg.rel_tol * 1e-2, 1e-14);
    inner.abs_tol = cfg.abs_tol * 1e-3;
    double acc = 0.0;
    for (std::size_t k = 0; k < c.inner_coef.size(); ++k) {
        const double kk = static_cast<double>(k);
        // Beyond (k + 60 + 10 sqrt(k+1))/λ the integrand's remaining mass is
        // below e^-45 of the total.
        const double cut = (kk + 60.0 + 10.0 * std::sqrt(kk + 1.0)) / c.lambda;
        const double upper = std::min(t, cut);
        auto f = [&](double y) { return std::pow(y, kk) * std::exp(-c.lambda * y); };
        const double peak = kk / c.lambda;
        const double part = integrate(f, grid(upper, {0.5, 1.0, 2.0, 4.0}, std::max(peak, 1.0 / c.lambda)), inner,
                                      "sr_cdf_nested").value;
        acc += c.inner_coef[k] * part;
    }
    return acc;
}

double outer_cut(const NakagamiPowerParams& nak, const QuadratureConfig& cfg, double mass) {
    if (cfg.outer_upper_cut > 0.0) {
        const double tail = boost::math::gamma_q(static_cast<double>(nak.m1), cfg.outer_upper_cut / nak.two_sigma_sq);
        if (tail >= mass)
            throw ParameterError("quadrature: outer_upper_cut leaves gamma tail mass " + std::to_string(tail)
                                 + " >= " + std::to_string(mass));
        return cfg.outer_upper_cut;
    }
    return nakagami_tail_cut(nak, mass);
}

} // namespace

void QuadratureConfig::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw ParameterError("quadrature: tolerances must be positive");
    if (max_subdivisions < 1) throw ParameterError("quadrature: max_subdivisions must be >= 1");
    if (!(outer_upper_cut >= 0.0)) throw ParameterError("quadrature: outer_upper_cut must be >= 0");
}

QuadratureConfig QuadratureConfig::halved() const {
    QuadratureConfig c = *this;
    c.rel_tol *= 0.5;
    c.abs_tol *= 0.5;
    return c;
}

double hyp1f1_series(int m, double z) {
    if (m < 1) throw DomainError("hyp1f1_series: m must be a positive integer");
    if (z < 0.0) throw DomainError("hyp1f1_series: only z >= 0 is supported");
    // Terms are positive; rescale to stay finite for large z.
    double sum = 1.0;
    double term = 1.0;
    double log_scale = 0.0;
    for (int j = 0;; ++j) {
        term *= (m + j) * z / ((j + 1.0) * (j + 1.0));
        sum += term;
        if (sum > 1e250) {
            log_scale += std::log(sum);
            term /= sum;
            sum = 1.0;
        }
        if (j > z && term < 1e-17 * sum) break;
    }
    return std::exp(std::log(sum) + log_scale);
}

double sr_pdf_series(const ShadowedRicianParams& sr, double y) {
    if (y < 0.0) throw DomainError("sr_pdf_series: y must be non-negative");
    const SrDerived d = sr_derived(sr);
    const double w = d.delta * y;
    double sum = 1.0;
    double term = 1.0;
    double log_scale = 0.0;
    for (int j = 0;; ++j) {
        term *= (sr.m2 + j) * w / ((j + 1.0) * (j + 1.0));
        sum += term;
        if (sum > 1e250) {
            log_scale += std::log(sum);
            term /= sum;
            sum = 1.0;
        }
        if (j > w && term < 1e-17 * sum) break;
    }
    return std::exp(std::log(d.alpha) - d.beta * y + std::log(sum) + log_scale);
}

double nakagami_tail_cut(const NakagamiPowerParams& nak, double mass) {
    nak.validate();
    return boost::math::gamma_q_inv(static_cast<double>(nak.m1), mass) * nak.two_sigma_sq;
}

double sr_tail_cut(const ShadowedRicianParams& sr, double mass) {
    const SrConstants c = sr_constants(sr);
    double hi = std::max(sr.mean_power(), 1.0 / c.lambda);
    while (sr_cdf_incgamma(c, hi, true) >= mass) hi *= 2.0;
    double lo = 0.0;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (sr_cdf_incgamma(c, mid, true) >= mass ? lo : hi) = mid;
    }
    return hi;
}

QuadResult cdf_z_quadrature(const NakagamiPowerParams& nak, const ShadowedRicianParams& sr, double z,
                            const QuadratureConfig& cfg, InnerMethod inner) {
    cfg.validate();
    nak.validate();
    if (!(z >= 0.0)) throw DomainError("cdf_z_quadrature: z must be non-negative");
    if (z == 0.0) return {0.0, 0.0};
    if (!std::isfinite(z)) return {1.0, 0.0};
    const SrConstants c = sr_constants(sr);
    const double cut = outer_cut(nak, cfg, cfg.abs_tol / 10.0);

    auto f = [&](double x) {
        if (x <= 0.0) return 0.0;
        const double fy = inner == InnerMethod::incomplete_gamma ? sr_cdf_incgamma(c, z / x, false)
                                                                 : sr_cdf_nested(c, z / x, cfg);
        return gamma_pdf(nak, x) * fy;
    };
    std::vector<double> pts = grid(cut, {0.05, 0.25, 0.5, 1.0, 2.0, 4.0}, nak.mean_power());
    for (double p : grid(cut, {0.01, 0.1, 1.0, 10.0}, z / sr.mean_power())) pts.push_back(p);
    QuadResult r = integrate(f, pts, cfg, "cdf_z_quadrature");
    r.error_estimate += cfg.abs_tol / 10.0;  // truncated x-tail
    return r;
}

QuadResult outage_quadrature(const analytic::PerfQuery& q, const QuadratureConfig& cfg, InnerMethod inner) {
    q.validate();
    const double z = analytic::gamma_threshold(q.rate_bpcu) / q.avg_snr_linear();
    return cdf_z_quadrature(q.nak, q.sr, z, cfg, inner);
}

QuadResult sr_cdf_quadrature(const ShadowedRicianParams& sr, double y, const QuadratureConfig& cfg) {
    cfg.validate();
    sr.validate();
    if (!(y >= 0.0)) throw DomainError("sr_cdf_quadrature: y must be non-negative");
    if (y == 0.0) return {0.0, 0.0};
    double tail = 0.0;
    if (!std::isfinite(y)) {
        y = sr_tail_cut(sr, cfg.abs_tol / 10.0);
        tail = cfg.abs_tol / 10.0;
    }
    auto f = [&](double t) { return sr_pdf_series(sr, t); };
    QuadResult r = integrate(f, grid(y, {0.05, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0}, sr.mean_power()), cfg,
                             "sr_cdf_quadrature");
    r.error_estimate += tail;
    return r;
}

std::vector<double> sr_cdf_sorted(const ShadowedRicianParams& sr, const std::vector<double>& sorted_y,
                                  const QuadratureConfig& cfg) {
    cfg.validate();
    sr.validate();
    auto f = [&](double t) { return sr_pdf_series(sr, t); };
    std::vector<double> out;
    out.reserve(sorted_y.size());
    specfun::CompensatedSum acc;
    double prev = 0.0;
    for (double y : sorted_y) {
        if (!(y >= prev) || !std::isfinite(y)) throw DomainError("sr_cdf_sorted: sample must be ascending, finite, >= 0");
        if (y > prev) {
            const quad::Result r = quad::integrate(f, prev, y, cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions);
            if (!r.converged) throw ConvergenceError("sr_cdf_sorted: tolerance not reached", r.value, r.error);
            acc.add(r.value);
        }
        out.push_back(acc.value());
        prev = y;
    }
    return out;
}

QuadResult nakagami_mass_quadrature(const NakagamiPowerParams& nak, const QuadratureConfig& cfg) {
    cfg.validate();
    const double cut = outer_cut(nak, cfg, cfg.abs_tol / 10.0);
    QuadResult r = integrate([&](double x) { return gamma_pdf(nak, x); },
                             grid(cut, {0.05, 0.25, 0.5, 1.0, 2.0, 4.0}, nak.mean_power()), cfg,
                             "nakagami_mass_quadrature");
    r.error_estimate += cfg.abs_tol / 10.0;
    return r;
}

QuadResult mean_z_quadrature(const NakagamiPowerParams& nak, const ShadowedRicianParams& sr,
                             const QuadratureConfig& cfg) {
    cfg.validate();
    const double x_cut = outer_cut(nak, cfg, cfg.abs_tol / 100.0);
    const double y_cut = sr_tail_cut(sr, cfg.abs_tol / 100.0);
    const auto y_pts = grid(y_cut, {0.05, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0}, sr.mean_power());
    QuadratureConfig inner_cfg = cfg;
    inner_cfg.abs_tol = cfg.abs_tol * 1e-2;

    double inner_err = 0.0;
    auto outer = [&](double x) {
        auto g = [&](double y) { return x * y * gamma_pdf(nak, x) * sr_pdf_series(sr, y); };
        const QuadResult r = integrate(g, y_pts, inner_cfg, "mean_z_quadrature(inner)");
        inner_err = std::max(inner_err, r.error_estimate);
        return r.value;
    };
    QuadResult r = integrate(outer, grid(x_cut, {0.05, 0.25, 0.5, 1.0, 2.0, 4.0}, nak.mean_power()), cfg,
                             "mean_z_quadrature");
    r.error_estimate += inner_err * x_cut + cfg.abs_tol / 10.0;
    return r;
}

QuadResult mean_z_product(const NakagamiPowerParams& nak, const ShadowedRicianParams& sr,
                          const QuadratureConfig& cfg) {
    cfg.validate();
    const double x_cut = outer_cut(nak, cfg, cfg.abs_tol / 100.0);
    const double y_cut = sr_tail_cut(sr, cfg.abs_tol / 100.0);
    const QuadResult ex = integrate([&](double x) { return x * gamma_pdf(nak, x); },
                                    grid(x_cut, {0.05, 0.25, 0.5, 1.0, 2.0, 4.0}, nak.mean_power()), cfg,
                                    "mean_z_product(x)");
    const QuadResult ey = integrate([&](double y) { return y * sr_pdf_series(sr, y); },
                                    grid(y_cut, {0.05, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0}, sr.mean_power()), cfg,
                                    "mean_z_product(y)");
    return {ex.value * ey.value,
            std::abs(ex.value) * ey.error_estimate + std::abs(ey.value) * ex.error_estimate + cfg.abs_tol / 10.0};
}

QuadResult ergodic_capacity_quadrature(const NakagamiPowerParams& nak, const ShadowedRicianParams& sr,
                                       double avg_snr_linear, const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(avg_snr_linear >= 0.0) || !std::isfinite(avg_snr_linear))
        throw DomainError("ergodic_capacity_quadrature: average SNR must be finite and >= 0");
    if (avg_snr_linear == 0.0) return {0.0, 0.0};
    const double x_cut = outer_cut(nak, cfg, cfg.abs_tol / 100.0);
    const double y_cut = sr_tail_cut(sr, cfg.abs_tol / 100.0);
    QuadratureConfig inner_cfg = cfg;
    inner_cfg.abs_tol = cfg.abs_tol * 1e-2;

    double inner_err = 0.0;
    auto outer = [&](double x) {
        const double gx = avg_snr_linear * x;
        auto g = [&](double y) { return sr_pdf_series(sr, y) * std::log2(1.0 + gx * y); };
        auto pts = grid(y_cut, {0.05, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0}, sr.mean_power());
        if (gx > 0.0 && 1.0 / gx < y_cut) pts.push_back(1.0 / gx);
        const QuadResult r = integrate(g, pts, inner_cfg, "ergodic_capacity_quadrature(inner)");
        inner_err = std::max(inner_err, r.error_estimate);
        return gamma_pdf(nak, x) * r.value;
    };
    QuadResult r = integrate(outer, grid(x_cut, {0.05, 0.25, 0.5, 1.0, 2.0, 4.0}, nak.mean_power()), cfg,
                             "ergodic_capacity_quadrature");
    r.error_estimate += inner_err + cfg.abs_tol;
    return r;
}

} // namespace hapseh::oracle
