#include "hapseh/linkbudget.hpp"

#include "hapseh/errors.hpp"

#include <numbers>
#include <string>

namespace hapseh::linkbudget {

namespace {

void require_finite_nonneg(double v, const char* what) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ParameterError(std::string(what) + " must be finite and >= 0");
}

double cos_deg(double deg) { return std::cos(deg * std::numbers::pi / 180.0); }

} // namespace

void Geometry::validate() const {
    require_finite_nonneg(alt_h1_km, "geometry: alt_h1_km");
    require_finite_nonneg(alt_h2_km, "geometry: alt_h2_km");
    require_finite_nonneg(alt_g_km, "geometry: alt_g_km");
    if (alt_h1_km == alt_h2_km) throw ParameterError("geometry: H1 and H2 must be at different altitudes");
    for (double z : {zenith_h1h2_deg, zenith_h2g_deg})
        if (!(z >= 0.0 && z < 90.0)) throw ParameterError("geometry: zenith angles must lie in [0, 90) degrees");
}

// Only the altitude separation enters, so either H1/H2 ordering gives the
// same distance.
double Geometry::distance_h1h2_km() const { return slant_distance(alt_h2_km - alt_h1_km, zenith_h1h2_deg); }
double Geometry::distance_h2g_km() const { return slant_distance(alt_h2_km - alt_g_km, zenith_h2g_deg); }

void RainParams::validate() const {
    require_finite_nonneg(rain_k, "rain: k");
    require_finite_nonneg(rain_alpha, "rain: alpha");
    require_finite_nonneg(rate_r001_mm_h, "rain: R0.01");
    require_finite_nonneg(effective_path_km, "rain: effective path length");
}

double LossBreakdown::linear_gain() const { return db_to_linear(-total_db); }

void EhTimeSwitchConfig::validate() const {
    if (!(eta > 0.0 && eta <= 1.0)) throw ParameterError("eh: eta must lie in (0, 1]");
    if (!(rho > 0.0 && rho < 1.0)) throw ParameterError("eh: rho must lie in (0, 1)");
    if (!(p_h1_w > 0.0) || !std::isfinite(p_h1_w)) throw ParameterError("eh: P_H1 must be positive");
}

double EhTimeSwitchConfig::slot_ratio_db() const { return linear_to_db(rho / (1.0 - rho)); }

void AntennaGains::validate() const {
    for (double g : {gt_h1_dbi, gr_h2_dbi, gt_h2_dbi, gr_g_dbi})
        if (!(g >= 0.0 && g <= 80.0)) throw ParameterError("antenna gains must lie in [0, 80] dBi");
}

double slant_distance(double delta_alt_km, double zenith_deg) {
    if (!(zenith_deg >= 0.0 && zenith_deg < 90.0))
        throw DomainError("slant_distance: zenith angle must lie in [0, 90) degrees, got " + std::to_string(zenith_deg));
    return std::abs(delta_alt_km) / cos_deg(zenith_deg);
}

double free_space_loss_interhaps(double d_km, double freq_ghz) {
    if (!(d_km > 0.0) || !(freq_ghz > 0.0)) throw DomainError("free_space_loss_interhaps: d and f must be positive");
    const double lambda_m = speed_of_light_m_per_s / (freq_ghz * 1e9);
    return 20.0 * std::log10(4.0 * std::numbers::pi * d_km * 1e3 / lambda_m);
}

double free_space_loss_ground(double d_km, double freq_ghz) {
    if (!(d_km > 0.0) || !(freq_ghz > 0.0)) throw DomainError("free_space_loss_ground: d and f must be positive");
    return 92.45 + 20.0 * std::log10(freq_ghz) + 20.0 * std::log10(d_km);
}

double rain_attenuation(const RainParams& p) {
    p.validate();
    if (p.rate_r001_mm_h == 0.0) return 0.0;
    const double specific_db_per_km = p.rain_k * std::pow(p.rate_r001_mm_h, p.rain_alpha);
    return specific_db_per_km * p.effective_path_km;
}

LossBreakdown total_path_loss(double l_f_db, double l_r_db, double l_a_db, double l_o_db) {
    for (double l : {l_f_db, l_r_db, l_a_db, l_o_db}) require_finite_nonneg(l, "loss component");
    return {l_f_db, l_r_db, l_a_db, l_o_db, l_f_db + l_r_db + l_a_db + l_o_db};
}

double noise_psd_db(const NoiseParams& n) { return n.k_db + n.t_n_dbk + n.bandwidth_dbhz; }

double harvested_power_dbm(const EhTimeSwitchConfig& cfg, const AntennaGains& gains, const LossBreakdown& loss_h1h2) {
    cfg.validate();
    return linear_to_db(cfg.eta * cfg.p_h1_w * 1e3) + gains.gt_h1_dbi + gains.gr_h2_dbi - loss_h1h2.total_db
           + cfg.slot_ratio_db();
}

double required_power_w(const PowerBudget& b) { return b.p_propulsion_w + b.p_payload_w + b.p_comm_w; }

double avg_snr_db(const EhTimeSwitchConfig& cfg, const AntennaGains& gains, const LossBreakdown& loss_h1h2,
                  const LossBreakdown& loss_h2g, const NoiseParams& n) {
    cfg.validate();
    return linear_to_db(cfg.eta) + cfg.slot_ratio_db() + linear_to_db(cfg.p_h1_w) - noise_psd_db(n)
           + gains.gt_h1_dbi + gains.gr_h2_dbi + gains.gt_h2_dbi + gains.gr_g_dbi - loss_h1h2.total_db
           - loss_h2g.total_db;
}

double avg_snr_linear(const EhTimeSwitchConfig& cfg, const AntennaGains& gains, const LossBreakdown& loss_h1h2,
                      const LossBreakdown& loss_h2g, const NoiseParams& n) {
    cfg.validate();
    const double n0 = db_to_linear(n.k_db) * db_to_linear(n.t_n_dbk) * db_to_linear(n.bandwidth_dbhz);
    const double antenna = db_to_linear(gains.gt_h1_dbi) * db_to_linear(gains.gr_h2_dbi)
                           * db_to_linear(gains.gt_h2_dbi) * db_to_linear(gains.gr_g_dbi);
    return cfg.eta * cfg.rho / (1.0 - cfg.rho) * (cfg.p_h1_w / n0) * antenna * loss_h1h2.linear_gain()
           * loss_h2g.linear_gain();
}

} // namespace hapseh::linkbudget
