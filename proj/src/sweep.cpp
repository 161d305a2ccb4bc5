#include "hapseh/sweep.hpp"

#include "hapseh/analytic.hpp"
#include "hapseh/errors.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cmath>
#include <map>
#include <sstream>

namespace hapseh::app {

using nlohmann::ordered_json;

namespace {

std::vector<std::string> split(const std::string& list) {
    std::vector<std::string> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    if (out.empty()) throw ConfigError("empty list '" + list + "'");
    return out;
}

struct GridPoint {
    double snr_axis_db;
    double eta;
};

double rain_loss(const Channel& c) { return c.rain ? linkbudget::rain_attenuation(*c.rain) : 0.0; }

void flag_error(SweepRow& row, const char* engine, const std::exception& e) {
    row.flags.push_back(fmt::format("{}_error: {}", engine, e.what()));
}

SweepResult run_grid(const Scenario& s, const SweepOptions& opt, const std::vector<GridPoint>& grid,
                     std::string kind) {
    s.validate();
    SweepResult result;
    result.kind = std::move(kind);

    for (const Channel& ch : s.channels()) {
        const double l_r = rain_loss(ch);

        // One draw of Z per channel serves every grid point.
        std::vector<double> z;
        std::string mc_failure;
        if (opt.engine_mc) {
            try {
                z = mc::sample_products(ch.nak, ch.sr, opt.mc);
            } catch (const Error& e) {
                mc_failure = e.what();
            }
        }
        // EC does not depend on R_b.
        std::map<double, std::optional<double>> ec_oracle_cache;

        for (const GridPoint& g : grid) {
            const double eff = analytic::effective_snr_db(g.snr_axis_db, g.eta, s.eh.rho, s.axis_includes_eta, l_r);
            for (double rb : s.rates_bpcu) {
                SweepRow row;
                row.scenario = ch.label;
                row.snr_axis_db = g.snr_axis_db;
                row.eta = g.eta;
                row.snr_eff_db = eff;
                row.rb_bpcu = rb;
                const analytic::PerfQuery q{eff, rb, ch.nak, ch.sr};

                if (opt.engine_analytic) {
                    try {
                        if (opt.metric_op || opt.metric_tp) {
                            const double op = analytic::outage_probability(q);
                            if (opt.metric_op) row.op_analytic = op;
                            if (opt.metric_tp) row.tp_analytic = rb * (1.0 - op);
                        }
                        if (opt.metric_ec) row.ec_ub = analytic::ergodic_capacity_upper(q);
                    } catch (const Error& e) {
                        flag_error(row, "analytic", e);
                    }
                }
                if (opt.engine_oracle) {
                    try {
                        if (opt.metric_op) row.op_oracle = oracle::outage_quadrature(q, opt.quad).value;
                        if (opt.metric_ec) {
                            auto it = ec_oracle_cache.find(eff);
                            if (it == ec_oracle_cache.end()) {
                                it = ec_oracle_cache.emplace(eff, std::nullopt).first;
                                it->second = oracle::ergodic_capacity_quadrature(ch.nak, ch.sr, q.avg_snr_linear(),
                                                                                 opt.quad)
                                                 .value;
                            }
                            row.ec_oracle = it->second;
                        }
                    } catch (const Error& e) {
                        flag_error(row, "oracle", e);
                    }
                }
                if (opt.engine_mc) {
                    if (!mc_failure.empty()) {
                        row.flags.push_back("mc_error: " + mc_failure);
                    } else {
                        try {
                            if (opt.metric_op || opt.metric_tp) {
                                const mc::McEstimate op = mc::outage_from_samples(z, q.avg_snr_linear(), rb);
                                if (opt.metric_op) {
                                    row.op_mc = op.value;
                                    row.op_mc_se = op.std_error;
                                }
                                if (opt.metric_tp) {
                                    const mc::McEstimate tp = mc::throughput_from_outage(op, rb);
                                    row.tp_mc = tp.value;
                                    row.tp_mc_se = tp.std_error;
                                }
                                if (op.rare_event) row.flags.push_back("mc_rare_event");
                            }
                            if (opt.metric_ec) {
                                const mc::McEstimate ec = mc::ergodic_capacity_from_samples(z, q.avg_snr_linear());
                                row.ec_mc = ec.value;
                                row.ec_mc_se = ec.std_error;
                            }
                        } catch (const Error& e) {
                            flag_error(row, "mc", e);
                        }
                    }
                }
                if (row.op_analytic && row.op_oracle
                    && std::abs(*row.op_analytic - *row.op_oracle) > opt.oracle_tolerance)
                    row.flags.push_back("oracle_mismatch");
                result.rows.push_back(std::move(row));
            }
        }
    }
    return result;
}

std::string cell(const std::optional<double>& v) { return v ? fmt::format("{}", *v) : std::string(); }

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string join(const std::vector<std::string>& v, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
    return out;
}

ordered_json opt_json(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json loss_json(const linkbudget::LossBreakdown& l) {
    return {{"l_f_db", l.l_f_db}, {"l_r_db", l.l_r_db}, {"l_a_db", l.l_a_db}, {"l_o_db", l.l_o_db},
            {"total_db", l.total_db}};
}

ordered_json budget_json(const BudgetReport& b) {
    return {{"scenario", b.scenario},
            {"d_h1h2_km", b.d_h1h2_km},
            {"d_h2g_km", b.d_h2g_km},
            {"loss_h1h2", loss_json(b.loss_h1h2)},
            {"loss_h2g", loss_json(b.loss_h2g)},
            {"n0_db", b.n0_db},
            {"harvested_dbm", b.harvested_dbm},
            {"harvested_w", b.harvested_w},
            {"rx_ground_dbm", b.rx_ground_dbm},
            {"sensitivity_dbm", b.sensitivity_dbm},
            {"margin_db", b.margin_db},
            {"p_comm_w", b.p_comm_w},
            {"p_required_w", b.p_required_w},
            {"avg_snr_db", b.avg_snr_db},
            {"warnings", b.warnings}};
}

} // namespace

void SweepOptions::set_metrics(const std::string& list) {
    metric_op = metric_ec = metric_tp = false;
    for (const auto& m : split(list)) {
        if (m == "op") metric_op = true;
        else if (m == "ec") metric_ec = true;
        else if (m == "tp") metric_tp = true;
        else throw ConfigError("unknown metric '" + m + "' (expected op, ec, tp)");
    }
}

void SweepOptions::set_engines(const std::string& list) {
    engine_analytic = engine_mc = engine_oracle = false;
    for (const auto& e : split(list)) {
        if (e == "analytic") engine_analytic = true;
        else if (e == "mc") engine_mc = true;
        else if (e == "oracle") engine_oracle = true;
        else throw ConfigError("unknown engine '" + e + "' (expected analytic, mc, oracle)");
    }
}

ordered_json SweepOptions::to_json() const {
    ordered_json metrics = ordered_json::array();
    if (metric_op) metrics.push_back("op");
    if (metric_ec) metrics.push_back("ec");
    if (metric_tp) metrics.push_back("tp");
    ordered_json engines = ordered_json::array();
    if (engine_analytic) engines.push_back("analytic");
    if (engine_mc) engines.push_back("mc");
    if (engine_oracle) engines.push_back("oracle");
    ordered_json j{{"metrics", metrics}, {"engines", engines}};
    if (engine_mc) j["mc"] = {{"trials", mc.trials}, {"seed", mc.seed}};
    if (engine_oracle) {
        j["quadrature"] = {{"rel_tol", quad.rel_tol},
                           {"abs_tol", quad.abs_tol},
                           {"max_subdivisions", quad.max_subdivisions},
                           {"outer_upper_cut", quad.outer_upper_cut}};
        j["oracle_tolerance"] = oracle_tolerance;
    }
    return j;
}

SweepResult run_sweep(const Scenario& s, const SweepOptions& opt) {
    std::vector<GridPoint> grid;
    for (double x : s.snr_axis_db) grid.push_back({x, s.eh.eta});
    return run_grid(s, opt, grid, "snr");
}

SweepResult run_eta_sweep(const Scenario& s, const SweepOptions& opt) {
    if (s.eta_axis.empty()) throw ParameterError("eta sweep: eta_axis must not be empty");
    std::vector<GridPoint> grid;
    for (double e : s.eta_axis) {
        if (!(e > 0.0 && e <= 1.0)) throw ParameterError("eta sweep: eta values must lie in (0, 1]");
        grid.push_back({s.eta_sweep_snr_db, e});
    }
    return run_grid(s, opt, grid, "eta");
}

BudgetReport run_budget(const Scenario& s) {
    s.validate();
    namespace lb = linkbudget;
    BudgetReport b;
    b.scenario = s.name;
    b.d_h1h2_km = s.d_h1h2_km.value_or(s.geometry.distance_h1h2_km());
    b.d_h2g_km = s.d_h2g_km.value_or(s.geometry.distance_h2g_km());
    b.loss_h1h2 = lb::total_path_loss(lb::free_space_loss_interhaps(b.d_h1h2_km, s.freq_ghz), 0.0,
                                      s.loss_h1h2.l_a_db, s.loss_h1h2.l_o_db);
    const double l_r = s.rain ? lb::rain_attenuation(*s.rain) : 0.0;
    b.loss_h2g = lb::total_path_loss(lb::free_space_loss_ground(b.d_h2g_km, s.freq_ghz), l_r, s.loss_h2g.l_a_db,
                                     s.loss_h2g.l_o_db);
    b.n0_db = lb::noise_psd_db(s.noise);
    b.harvested_dbm = lb::harvested_power_dbm(s.eh, s.gains, b.loss_h1h2);
    b.harvested_w = std::pow(10.0, (b.harvested_dbm - 30.0) / 10.0);
    b.rx_ground_dbm = b.harvested_dbm + s.gains.gt_h2_dbi + s.gains.gr_g_dbi - b.loss_h2g.total_db;
    b.margin_db = b.rx_ground_dbm - b.sensitivity_dbm;
    const double p_comm_dbm = b.sensitivity_dbm + b.loss_h2g.total_db - s.gains.gt_h2_dbi - s.gains.gr_g_dbi;
    b.p_comm_w = std::pow(10.0, (p_comm_dbm - 30.0) / 10.0);
    lb::PowerBudget pb = s.power;
    pb.p_comm_w = b.p_comm_w;
    b.p_required_w = lb::required_power_w(pb);
    b.avg_snr_db = lb::avg_snr_db(s.eh, s.gains, b.loss_h1h2, b.loss_h2g, s.noise);
    if (s.eh.rho != 0.5)
        b.warnings.push_back(fmt::format("rho = {} != 0.5: harvested power includes the rho/(1-rho) factor of {} dB",
                                         s.eh.rho, s.eh.slot_ratio_db()));
    if (b.harvested_w < b.p_required_w)
        b.warnings.push_back("harvested power is below the total platform requirement");
    return b;
}

ordered_json run_config(const Scenario& s, const SweepOptions& opt) {
    return {{"scenario", to_json(s)}, {"run", opt.to_json()}};
}

void write_csv(std::ostream& os, const SweepResult& r, const ordered_json& config) {
    os << "# hapseh " << tool_version << " " << r.kind << " sweep\n";
    os << "# config: " << config.dump() << "\n";
    os << "scenario,snr_axis_db,eta,snr_eff_db,rb_bpcu,op_analytic,op_mc,op_mc_se,op_oracle,ec_ub_bpcu,ec_mc_bpcu,"
          "ec_mc_se_bpcu,ec_oracle_bpcu,tp_analytic_bpcu,tp_mc_bpcu,tp_mc_se_bpcu,flags\n";
    for (const SweepRow& row : r.rows) {
        fmt::print(os, "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", csv_quote(row.scenario),
                   row.snr_axis_db, row.eta, row.snr_eff_db, row.rb_bpcu, cell(row.op_analytic), cell(row.op_mc),
                   cell(row.op_mc_se), cell(row.op_oracle), cell(row.ec_ub), cell(row.ec_mc), cell(row.ec_mc_se),
                   cell(row.ec_oracle), cell(row.tp_analytic), cell(row.tp_mc), cell(row.tp_mc_se),
                   csv_quote(join(row.flags, ";")));
    }
}

void write_json(std::ostream& os, const SweepResult& r, const ordered_json& config) {
    ordered_json rows = ordered_json::array();
    for (const SweepRow& row : r.rows) {
        rows.push_back({{"scenario", row.scenario},
                        {"snr_axis_db", row.snr_axis_db},
                        {"eta", row.eta},
                        {"snr_eff_db", row.snr_eff_db},
                        {"rb_bpcu", row.rb_bpcu},
                        {"op_analytic", opt_json(row.op_analytic)},
                        {"op_mc", opt_json(row.op_mc)},
                        {"op_mc_se", opt_json(row.op_mc_se)},
                        {"op_oracle", opt_json(row.op_oracle)},
                        {"ec_ub_bpcu", opt_json(row.ec_ub)},
                        {"ec_mc_bpcu", opt_json(row.ec_mc)},
                        {"ec_mc_se_bpcu", opt_json(row.ec_mc_se)},
                        {"ec_oracle_bpcu", opt_json(row.ec_oracle)},
                        {"tp_analytic_bpcu", opt_json(row.tp_analytic)},
                        {"tp_mc_bpcu", opt_json(row.tp_mc)},
                        {"tp_mc_se_bpcu", opt_json(row.tp_mc_se)},
                        {"flags", row.flags}});
    }
    const ordered_json doc{{"tool", "hapseh"}, {"version", tool_version}, {"kind", r.kind}, {"config", config},
                           {"rows", rows}};
    os << doc.dump(2) << "\n";
}

void write_budget_csv(std::ostream& os, const BudgetReport& b, const ordered_json& config) {
    os << "# hapseh " << tool_version << " budget\n";
    os << "# config: " << config.dump() << "\n";
    for (const auto& w : b.warnings) os << "# warning: " << w << "\n";
    os << "quantity,value,unit\n";
    const auto line = [&os](const char* name, double v, const char* unit) { fmt::print(os, "{},{},{}\n", name, v, unit); };
    line("d_h1h2", b.d_h1h2_km, "km");
    line("d_h2g", b.d_h2g_km, "km");
    line("l_f_h1h2", b.loss_h1h2.l_f_db, "dB");
    line("l_a_h1h2", b.loss_h1h2.l_a_db, "dB");
    line("l_o_h1h2", b.loss_h1h2.l_o_db, "dB");
    line("l_total_h1h2", b.loss_h1h2.total_db, "dB");
    line("l_f_h2g", b.loss_h2g.l_f_db, "dB");
    line("l_r_h2g", b.loss_h2g.l_r_db, "dB");
    line("l_a_h2g", b.loss_h2g.l_a_db, "dB");
    line("l_o_h2g", b.loss_h2g.l_o_db, "dB");
    line("l_total_h2g", b.loss_h2g.total_db, "dB");
    line("n0", b.n0_db, "dB");
    line("harvested_power", b.harvested_dbm, "dBm");
    line("harvested_power_w", b.harvested_w, "W");
    line("rx_ground", b.rx_ground_dbm, "dBm");
    line("sensitivity", b.sensitivity_dbm, "dBm");
    line("margin", b.margin_db, "dB");
    line("p_comm", b.p_comm_w, "W");
    line("p_required", b.p_required_w, "W");
    line("avg_snr", b.avg_snr_db, "dB");
}

void write_budget_json(std::ostream& os, const BudgetReport& b, const ordered_json& config) {
    const ordered_json doc{{"tool", "hapseh"}, {"version", tool_version}, {"kind", "budget"}, {"config", config},
                           {"budget", budget_json(b)}};
    os << doc.dump(2) << "\n";
}

ordered_json sidecar(const ordered_json& config, const std::string& command) {
    ordered_json j{{"tool", "hapseh"}, {"version", tool_version}, {"command", command}};
    const auto& run = config.contains("run") ? config["run"] : ordered_json::object();
    j["seed"] = run.contains("mc") ? run["mc"]["seed"] : ordered_json(nullptr);
    j["trials"] = run.contains("mc") ? run["mc"]["trials"] : ordered_json(nullptr);
    j["tolerances"] = {{"quadrature", run.contains("quadrature") ? run["quadrature"] : ordered_json(nullptr)},
                       {"oracle_op_abs", run.contains("oracle_tolerance") ? run["oracle_tolerance"]
                                                                         : ordered_json(nullptr)},
                       {"outage_instability_band", 1e-6}};
    j["config"] = config;
    return j;
}

} // namespace hapseh::app
