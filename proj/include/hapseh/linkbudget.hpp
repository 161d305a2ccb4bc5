#pragma once

#include <cmath>

// Deterministic RF budget for the H1 -> H2 energy-harvesting hop and the
// H2 -> G data hop. Units are carried in field names: _km, _ghz, _db, _dbm,
// _dbi, _w.

namespace hapseh::linkbudget {

inline constexpr double speed_of_light_m_per_s = 2.998e8;
inline constexpr double boltzmann_dbw_per_k_hz = -228.6;

struct Geometry {
    double alt_h1_km = 21.0;
    double alt_h2_km = 20.0;
    double alt_g_km = 0.0;
    double zenith_h1h2_deg = 75.0;
    double zenith_h2g_deg = 0.0;

    void validate() const;
    double distance_h1h2_km() const;
    double distance_h2g_km() const;

    friend bool operator==(const Geometry&, const Geometry&) = default;
};

/// ITU-R style rain inputs. The coefficients k, α (ITU-R P.838) and the
/// effective path length (ITU-R P.530) are not derived here.
struct RainParams {
    double rain_k = 0.0;
    double rain_alpha = 0.0;
    double rate_r001_mm_h = 0.0;
    double effective_path_km = 0.0;

    void validate() const;

    friend bool operator==(const RainParams&, const RainParams&) = default;
};

struct LossBreakdown {
    double l_f_db = 0.0;
    double l_r_db = 0.0;
    double l_a_db = 0.0;
    double l_o_db = 0.0;
    double total_db = 0.0;

    /// Per-link linear gain 10^{-total/10}.
    double linear_gain() const;
};

struct NoiseParams {
    double k_db = boltzmann_dbw_per_k_hz;
    double t_n_dbk = 22.3805;
    double bandwidth_dbhz = 76.02;

    friend bool operator==(const NoiseParams&, const NoiseParams&) = default;
};

/// Time-switching harvester. ρ = T_EH / (T_EH + T_TX), so the slot lengths
/// themselves are not needed.
struct EhTimeSwitchConfig {
    double eta = 1.0;
    double rho = 0.5;
    double p_h1_w = 200.0;

    void validate() const;
    /// 10 log10(ρ / (1 - ρ)); 0 dB at ρ = 0.5.
    double slot_ratio_db() const;

    friend bool operator==(const EhTimeSwitchConfig&, const EhTimeSwitchConfig&) = default;
};

struct AntennaGains {
    double gt_h1_dbi = 50.0;
    double gr_h2_dbi = 50.0;
    double gt_h2_dbi = 52.0;
    double gr_g_dbi = 60.0;

    void validate() const;

    friend bool operator==(const AntennaGains&, const AntennaGains&) = default;
};

struct PowerBudget {
    double p_propulsion_w = 100.0;
    double p_payload_w = 40.0;
    double p_comm_w = 0.0;

    friend bool operator==(const PowerBudget&, const PowerBudget&) = default;
};

/// |Δh| sec(ζ). Throws DomainError unless 0 <= ζ < 90°.
double slant_distance(double delta_alt_km, double zenith_deg);

/// 20 log10(4π d / λ), λ = c / f.
double free_space_loss_interhaps(double d_km, double freq_ghz);

/// 92.45 + 20 log10(f_GHz) + 20 log10(d_km).
double free_space_loss_ground(double d_km, double freq_ghz);

/// γ_R L_E with γ_R = k R^α (dB/km).
double rain_attenuation(const RainParams& p);

LossBreakdown total_path_loss(double l_f_db, double l_r_db, double l_a_db, double l_o_db);

/// N0 = K_dB + T_N + B (dB).
double noise_psd_db(const NoiseParams& n);

/// Power available at H2 during the transmit slot, at nominal |g1|² = 1, in dBm.
double harvested_power_dbm(const EhTimeSwitchConfig& cfg, const AntennaGains& gains,
                           const LossBreakdown& loss_h1h2);

double required_power_w(const PowerBudget& b);

/// Average end-to-end SNR γ̄0 in dB.
double avg_snr_db(const EhTimeSwitchConfig& cfg, const AntennaGains& gains, const LossBreakdown& loss_h1h2,
                  const LossBreakdown& loss_h2g, const NoiseParams& n);

/// Same quantity computed entirely in linear units; used to cross-check the dB path.
double avg_snr_linear(const EhTimeSwitchConfig& cfg, const AntennaGains& gains, const LossBreakdown& loss_h1h2,
                      const LossBreakdown& loss_h2g, const NoiseParams& n);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double v) { return 10.0 * std::log10(v); }

} // namespace hapseh::linkbudget
