// hapseh: sweeps, budgets and self-validation for the two-HAPS
// energy-harvesting link.

#include "hapseh/errors.hpp"
#include "hapseh/scenario.hpp"
#include "hapseh/sweep.hpp"
#include "hapseh/validate.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace hapseh;
using namespace hapseh::app;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;

struct RunFlags {
    std::string scenario = "default";
    std::string metric = "op,ec,tp";
    std::string engine = "analytic";
    std::optional<std::string> snr;
    std::optional<std::string> rb;
    std::optional<std::string> eta;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
    std::optional<std::uint64_t> batch;
    std::string out;
    std::string format = "csv";
    bool axis_includes_eta = false;
};

std::uint64_t default_seed() {
    if (const char* env = std::getenv("HAPSEH_SEED")) {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(env, &used);
            if (used == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
        throw ConfigError(std::string("HAPSEH_SEED='") + env + "' is not an unsigned integer");
    }
    return 1;
}

void add_common(CLI::App* cmd, RunFlags& f) {
    cmd->add_option("--scenario", f.scenario, "preset name or path to a JSON scenario file");
    cmd->add_option("--metric", f.metric, "op, ec, tp or a comma list");
    cmd->add_option("--engine", f.engine, "comma list of analytic, mc, oracle");
    cmd->add_option("--rb", f.rb, "target rates in bpcu, comma list");
    cmd->add_option("--eta", f.eta, "EH efficiencies, comma list");
    cmd->add_option("--trials", f.trials, "Monte-Carlo trials");
    cmd->add_option("--seed", f.seed, "Monte-Carlo seed (default $HAPSEH_SEED or 1)");
    cmd->add_option("--workers", f.workers, "Monte-Carlo threads, 0 = all cores");
    cmd->add_option("--batch", f.batch, "trials per work unit");
    cmd->add_option("--out", f.out, "output file (default stdout); a .meta.json sidecar is written next to it");
    cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--axis-includes-eta", f.axis_includes_eta, "treat the SNR axis as already scaled by eta");
}

SweepOptions sweep_options(const RunFlags& f) {
    SweepOptions o;
    o.set_metrics(f.metric);
    o.set_engines(f.engine);
    o.mc.seed = f.seed.value_or(default_seed());
    if (f.trials) o.mc.trials = *f.trials;
    if (f.workers) o.mc.workers = *f.workers;
    if (f.batch) o.mc.batch = *f.batch;
    if (o.engine_mc) o.mc.validate();
    return o;
}

void emit(const RunFlags& f, const std::string& command, const nlohmann::ordered_json& config, auto&& write) {
    if (f.out.empty()) {
        write(std::cout);
        return;
    }
    {
        std::ofstream os(f.out, std::ios::binary);
        if (!os) throw ConfigError("cannot open '" + f.out + "' for writing");
        write(os);
    }
    std::ofstream meta(f.out + ".meta.json", std::ios::binary);
    if (!meta) throw ConfigError("cannot open '" + f.out + ".meta.json' for writing");
    meta << sidecar(config, command).dump(2) << "\n";
}

int cmd_sweep(const RunFlags& f) {
    Scenario s = load_scenario(f.scenario);
    if (f.snr) s.snr_axis_db = parse_range(*f.snr);
    if (f.rb) s.rates_bpcu = parse_list(*f.rb);
    if (f.axis_includes_eta) s.axis_includes_eta = true;
    std::vector<double> etas{s.eh.eta};
    if (f.eta) etas = parse_list(*f.eta);
    s.validate();
    const SweepOptions opt = sweep_options(f);

    SweepResult all;
    all.kind = "snr";
    for (double eta : etas) {
        Scenario si = s;
        si.eh.eta = eta;
        SweepResult r = run_sweep(si, opt);
        for (auto& row : r.rows) all.rows.push_back(std::move(row));
    }
    auto config = run_config(s, opt);
    config["run"]["eta_values"] = etas;
    emit(f, "sweep", config, [&](std::ostream& os) {
        f.format == "json" ? write_json(os, all, config) : write_csv(os, all, config);
    });
    return kExitOk;
}

int cmd_eta_sweep(const RunFlags& f) {
    Scenario s = load_scenario(f.scenario);
    if (f.snr) {
        const std::string& v = *f.snr;
        const auto axis = v.find(':') == std::string::npos ? parse_list(v) : parse_range(v);
        if (axis.size() != 1) throw ConfigError("eta-sweep: --snr must name a single SNR value");
        s.eta_sweep_snr_db = axis.front();
    }
    if (f.rb) s.rates_bpcu = parse_list(*f.rb);
    if (f.eta) s.eta_axis = parse_list(*f.eta);
    if (f.axis_includes_eta) s.axis_includes_eta = true;
    if (s.eta_axis.empty()) s.eta_axis = parse_range("0.1:1:0.1");
    s.validate();
    const SweepOptions opt = sweep_options(f);
    const SweepResult r = run_eta_sweep(s, opt);
    const auto config = run_config(s, opt);
    emit(f, "eta-sweep", config, [&](std::ostream& os) {
        f.format == "json" ? write_json(os, r, config) : write_csv(os, r, config);
    });
    return kExitOk;
}

int cmd_budget(const RunFlags& f) {
    const Scenario s = load_scenario(f.scenario);
    const BudgetReport b = run_budget(s);
    const nlohmann::ordered_json config{{"scenario", to_json(s)}};
    emit(f, "budget", config, [&](std::ostream& os) {
        f.format == "json" ? write_budget_json(os, b, config) : write_budget_csv(os, b, config);
    });
    return kExitOk;
}

int cmd_validate(const std::string& level, unsigned workers, const std::string& out) {
    const ValidationReport r =
        run_validation(level == "full" ? ValidationLevel::full : ValidationLevel::quick, workers);
    for (const auto& c : r.checks)
        std::cerr << fmt::format("[{}] {}  expected={} actual={} tol={}  {}\n", c.passed ? "PASS" : "FAIL", c.name,
                                 c.expected, c.actual, c.tolerance, c.detail);
    const std::string doc = r.to_json().dump(2);
    if (out.empty()) {
        std::cout << doc << "\n";
    } else {
        std::ofstream os(out, std::ios::binary);
        if (!os) throw ConfigError("cannot open '" + out + "' for writing");
        os << doc << "\n";
    }
    return r.passed() ? kExitOk : kExitValidation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Outage, capacity and power-budget analysis of a two-HAPS RF energy-harvesting link"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tool_version));

    RunFlags sweep_f, eta_f, budget_f;
    auto* sweep = app.add_subcommand("sweep", "OP / EC / throughput versus average SNR");
    add_common(sweep, sweep_f);
    sweep->add_option("--snr", sweep_f.snr, "SNR axis start:stop:step in dB");

    auto* eta = app.add_subcommand("eta-sweep", "OP / EC / throughput versus EH efficiency at a fixed SNR");
    add_common(eta, eta_f);
    eta->add_option("--snr", eta_f.snr, "fixed SNR axis value in dB");

    auto* budget = app.add_subcommand("budget", "link and power budget of a scenario (case1, case2, case3, ...)");
    budget_f.scenario = "case1";
    budget->add_option("--scenario", budget_f.scenario, "preset name or path to a JSON scenario file");
    budget->add_option("--out", budget_f.out, "output file (default stdout)");
    budget->add_option("--format", budget_f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    std::string level = "quick";
    unsigned val_workers = 1;
    std::string val_out;
    auto* val = app.add_subcommand("validate", "self-test: closed forms vs oracle vs Monte Carlo");
    val->add_option("level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}));
    val->add_option("--workers", val_workers, "Monte-Carlo threads, 0 = all cores");
    val->add_option("--out", val_out, "write the JSON report here instead of stdout");

    auto* presets = app.add_subcommand("presets", "preset registry");
    presets->require_subcommand(1);
    auto* list = presets->add_subcommand("list", "list registered presets");
    std::string show_name;
    auto* show = presets->add_subcommand("show", "print a preset as a JSON scenario file");
    show->add_option("name", show_name)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*sweep) return cmd_sweep(sweep_f);
        if (*eta) return cmd_eta_sweep(eta_f);
        if (*budget) return cmd_budget(budget_f);
        if (*val) return cmd_validate(level, val_workers, val_out);
        if (*list) {
            for (const auto& n : preset_names()) {
                const Scenario s = preset(n);
                std::cout << fmt::format("{:<8} {}\n", n, s.notes.empty() ? "" : s.notes.front());
            }
            return kExitOk;
        }
        if (*show) {
            std::cout << to_json(preset(show_name)).dump(2) << "\n";
            return kExitOk;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DomainError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}
