#pragma once

#include "hapseh/linkbudget.hpp"
#include "hapseh/montecarlo.hpp"
#include "hapseh/oracle.hpp"
#include "hapseh/scenario.hpp"

#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace hapseh::app {

inline constexpr const char* tool_version = "0.1.0";

struct SweepOptions {
    bool metric_op = true;
    bool metric_ec = true;
    bool metric_tp = true;
    bool engine_analytic = true;
    bool engine_mc = false;
    bool engine_oracle = false;
    mc::McConfig mc;
    oracle::QuadratureConfig quad;
    /// Analytic/oracle OP disagreement above this flags the row.
    double oracle_tolerance = 1e-6;

    void set_metrics(const std::string& list);  ///< e.g. "op,ec"
    void set_engines(const std::string& list);  ///< e.g. "analytic,mc"
    nlohmann::ordered_json to_json() const;
};

struct SweepRow {
    std::string scenario;
    double snr_axis_db = 0.0;
    double eta = 1.0;
    double snr_eff_db = 0.0;
    double rb_bpcu = 1.0;
    std::optional<double> op_analytic, op_mc, op_mc_se, op_oracle;
    std::optional<double> ec_ub, ec_mc, ec_mc_se, ec_oracle;
    std::optional<double> tp_analytic, tp_mc, tp_mc_se;
    std::vector<std::string> flags;
};

struct SweepResult {
    std::string kind;  ///< "snr" or "eta"
    std::vector<SweepRow> rows;
};

/// Every (channel, SNR, R_b) point of the scenario. Engine failures are
/// recorded in the row's flags and the sweep carries on.
SweepResult run_sweep(const Scenario& s, const SweepOptions& opt);

/// Every (channel, η, R_b) point at the scenario's fixed SNR axis value.
SweepResult run_eta_sweep(const Scenario& s, const SweepOptions& opt);

struct BudgetReport {
    std::string scenario;
    double d_h1h2_km = 0.0;
    double d_h2g_km = 0.0;
    linkbudget::LossBreakdown loss_h1h2;
    linkbudget::LossBreakdown loss_h2g;
    double n0_db = 0.0;
    double harvested_dbm = 0.0;
    double harvested_w = 0.0;
    double rx_ground_dbm = 0.0;  ///< harvested power radiated by H2, received at G
    double sensitivity_dbm = -80.0;
    double margin_db = 0.0;      ///< rx_ground_dbm - sensitivity_dbm
    double p_comm_w = 0.0;       ///< H2 transmit power that just meets the sensitivity line
    double p_required_w = 0.0;   ///< propulsion + payload + p_comm_w
    double avg_snr_db = 0.0;     ///< γ̄0 of the full two-hop budget
    std::vector<std::string> warnings;
};

BudgetReport run_budget(const Scenario& s);

/// Effective config echoed into outputs; excludes execution-only settings
/// such as the worker count.
nlohmann::ordered_json run_config(const Scenario& s, const SweepOptions& opt);

void write_csv(std::ostream& os, const SweepResult& r, const nlohmann::ordered_json& config);
void write_json(std::ostream& os, const SweepResult& r, const nlohmann::ordered_json& config);
void write_budget_csv(std::ostream& os, const BudgetReport& b, const nlohmann::ordered_json& config);
void write_budget_json(std::ostream& os, const BudgetReport& b, const nlohmann::ordered_json& config);

/// Sidecar metadata: tool version, seed, trials, tolerances, config.
nlohmann::ordered_json sidecar(const nlohmann::ordered_json& config, const std::string& command);

} // namespace hapseh::app
