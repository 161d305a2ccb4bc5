#pragma once

#include "hapseh/channel.hpp"
#include "hapseh/linkbudget.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace hapseh::app {

/// Loss terms other than free-space and rain for one hop.
struct HopLosses {
    double l_a_db = 0.0;
    double l_o_db = 0.0;

    friend bool operator==(const HopLosses&, const HopLosses&) = default;
};

/// One curve of a multi-curve scenario. Unset fields inherit the scenario's.
struct ChannelVariant {
    std::string label;
    std::optional<NakagamiPowerParams> nak;
    std::optional<ShadowedRicianParams> sr;
    std::optional<linkbudget::RainParams> rain;

    friend bool operator==(const ChannelVariant&, const ChannelVariant&) = default;
};

/// Fully resolved channel of one curve.
struct Channel {
    std::string label;
    NakagamiPowerParams nak;
    ShadowedRicianParams sr;
    std::optional<linkbudget::RainParams> rain;
};

struct Scenario {
    std::string name = "default";
    std::vector<std::string> notes;

    linkbudget::Geometry geometry;
    linkbudget::AntennaGains gains;
    linkbudget::NoiseParams noise;
    linkbudget::EhTimeSwitchConfig eh;
    linkbudget::PowerBudget power;
    double freq_ghz = 17.7;
    /// Literal hop distances; when unset they follow from the geometry.
    std::optional<double> d_h1h2_km;
    std::optional<double> d_h2g_km;
    HopLosses loss_h1h2{0.0216, 0.0};
    HopLosses loss_h2g{0.0108, 5.0};

    NakagamiPowerParams nak = NakagamiPowerParams::unit_mean(10);
    ShadowedRicianParams sr{0.126, 10, 0.835};
    std::optional<linkbudget::RainParams> rain;
    std::vector<ChannelVariant> variants;

    std::vector<double> snr_axis_db;
    std::vector<double> rates_bpcu{1.0, 2.0, 3.0};
    std::vector<double> eta_axis;
    double eta_sweep_snr_db = 20.0;
    /// Treat the SNR axis as already containing η and ρ/(1-ρ).
    bool axis_includes_eta = false;

    void validate() const;
    /// The scenario's own channel when there are no variants, else one per variant.
    std::vector<Channel> channels() const;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

nlohmann::ordered_json to_json(const Scenario& s);
/// Throws ConfigError on unknown keys or wrong types, ParameterError on
/// invalid values.
Scenario scenario_from_json(const nlohmann::json& j);

std::vector<std::string> preset_names();
bool is_preset(const std::string& name);
Scenario preset(const std::string& name);

/// A registered preset name, or a path to a JSON scenario file.
Scenario load_scenario(const std::string& name_or_path);

/// start:stop:step, inclusive of stop when it falls on the grid.
std::vector<double> parse_range(const std::string& spec);
/// Comma-separated reals.
std::vector<double> parse_list(const std::string& spec);

} // namespace hapseh::app
