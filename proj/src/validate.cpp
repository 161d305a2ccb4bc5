#include "hapseh/validate.hpp"

#include "hapseh/analytic.hpp"
#include "hapseh/errors.hpp"
#include "hapseh/linkbudget.hpp"
#include "hapseh/montecarlo.hpp"
#include "hapseh/oracle.hpp"
#include "hapseh/scenario.hpp"
#include "hapseh/sweep.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hapseh::app {

namespace {

struct Preset {
    const char* name;
    NakagamiPowerParams nak;
    ShadowedRicianParams sr;
};

std::vector<Preset> channel_presets() {
    std::vector<Preset> out;
    for (const char* n : {"fhs", "as", "ils", "fig5"}) {
        const Scenario s = preset(n);
        out.push_back({n, s.nak, s.sr});
    }
    return out;
}

// Standard error of a binomial proportion at the reference probability. The
// plug-in form collapses to 0 when every trial lands on one side.
double binomial_se(double p, std::uint64_t n) { return std::sqrt(p * (1.0 - p) / static_cast<double>(n)); }

Check within(std::string name, double expected, double actual, double tol, std::string detail = {}) {
    return {std::move(name), std::abs(actual - expected) <= tol, expected, actual, tol, std::move(detail)};
}

// Records the worst point of a family of comparisons as one check.
struct Worst {
    double excess = -INFINITY;
    double expected = 0.0, actual = 0.0, tol = 0.0;
    std::string where;
    bool ok = true;

    void see(double e, double a, double t, std::string w) {
        const double ex = std::abs(a - e) - t;
        if (!(ex <= 0.0)) ok = false;
        if (ex > excess || std::isnan(ex)) {
            excess = ex;
            expected = e;
            actual = a;
            tol = t;
            where = std::move(w);
        }
    }
    Check check(std::string name) const { return {std::move(name), ok, expected, actual, tol, "worst at " + where}; }
};

Check guarded(const std::string& name, auto&& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        Check c;
        c.name = name;
        c.detail = std::string("exception: ") + e.what();
        return c;
    }
}

// Analytic OP of a sweep, keyed by (channel, SNR index, rate index).
std::vector<std::vector<std::vector<double>>> op_grid(const Scenario& s) {
    SweepOptions opt;
    opt.set_metrics("op");
    const SweepResult r = run_sweep(s, opt);
    const auto chans = s.channels();
    std::vector<std::vector<std::vector<double>>> g(
        chans.size(), std::vector<std::vector<double>>(s.snr_axis_db.size(), std::vector<double>(s.rates_bpcu.size())));
    std::size_t k = 0;
    for (std::size_t c = 0; c < chans.size(); ++c)
        for (std::size_t i = 0; i < s.snr_axis_db.size(); ++i)
            for (std::size_t j = 0; j < s.rates_bpcu.size(); ++j) {
                const auto& row = r.rows.at(k++);
                if (!row.op_analytic) throw Error("ordering: analytic OP missing at " + row.scenario);
                g[c][i][j] = *row.op_analytic;
            }
    return g;
}

void quick_checks(std::vector<Check>& out, unsigned workers) {
    const auto presets = channel_presets();

    out.push_back(guarded("closed_form_vs_oracle_op", [&] {
        Worst w;
        for (const auto& p : presets)
            for (double snr = 0.0; snr <= 40.0; snr += 10.0)
                for (double rb : {1.0, 2.0, 3.0}) {
                    const analytic::PerfQuery q{snr, rb, p.nak, p.sr};
                    w.see(oracle::outage_quadrature(q).value, analytic::outage_probability(q), 1e-6,
                          fmt::format("{} {} dB R_b={}", p.name, snr, rb));
                }
        return w.check("closed_form_vs_oracle_op");
    }));

    out.push_back(guarded("sr_mass_series", [&] {
        Worst w;
        for (const auto& p : presets) w.see(1.0, shadowed_rician_mass_series(p.sr), 1e-12, p.name);
        return w.check("sr_mass_series");
    }));

    out.push_back(guarded("pdf_normalization", [&] {
        Worst w;
        for (const auto& p : presets) {
            w.see(1.0, oracle::nakagami_mass_quadrature(p.nak).value, 1e-8, std::string(p.name) + " X");
            w.see(1.0, oracle::sr_cdf_quadrature(p.sr, INFINITY).value, 1e-8, std::string(p.name) + " Y");
        }
        return w.check("pdf_normalization");
    }));

    out.push_back(guarded("mean_gamma0_identity", [&] {
        Worst w;
        for (const auto& p : presets) {
            const analytic::PerfQuery q{10.0, 1.0, p.nak, p.sr};
            const double expect = 10.0 * p.nak.mean_power() * (2.0 * p.sr.b + p.sr.omega);
            w.see(1.0, analytic::mean_gamma0(q) / expect, 1e-10, p.name);
            w.see(1.0, oracle::mean_z_quadrature(p.nak, p.sr).value * 10.0 / expect, 1e-8,
                  std::string(p.name) + " quadrature");
        }
        return w.check("mean_gamma0_identity");
    }));

    out.push_back(guarded("noise_psd", [&] {
        return within("noise_psd", -130.1995, linkbudget::noise_psd_db(preset("default").noise), 1e-4);
    }));

    for (const auto& [name, target, tol] :
         std::vector<std::tuple<std::string, double, double>>{{"case1", 26.2, 0.5}, {"case2", 25.0, 1.0}, {"case3", 25.0, 1.0}})
        out.push_back(guarded("budget_" + name, [&] {
            return within("budget_" + name, target, run_budget(preset(name)).harvested_dbm, tol, "harvested dBm");
        }));

    out.push_back(guarded("ordering_rate", [&] {
        const Scenario s = preset("fig2");
        const auto g = op_grid(s);
        Check c{"ordering_rate", true, 0, 0, 0, "OP(R_b=1) < OP(R_b=2) < OP(R_b=3) at every SNR"};
        for (std::size_t i = 0; i < s.snr_axis_db.size(); ++i)
            if (!(g[0][i][0] < g[0][i][1] && g[0][i][1] < g[0][i][2])) {
                c.passed = false;
                c.detail += fmt::format("; violated at {} dB", s.snr_axis_db[i]);
            }
        return c;
    }));

    out.push_back(guarded("ordering_shadowing", [&] {
        const Scenario s = preset("fig4");
        const auto g = op_grid(s);  // channels: fhs, as, ils
        Check c{"ordering_shadowing", true, 0, 0, 0, "OP(ils) < OP(as) < OP(fhs) at every SNR"};
        for (std::size_t i = 0; i < s.snr_axis_db.size(); ++i)
            if (!(g[2][i][0] < g[1][i][0] && g[1][i][0] < g[0][i][0])) {
                c.passed = false;
                c.detail += fmt::format("; violated at {} dB", s.snr_axis_db[i]);
            }
        return c;
    }));

    out.push_back(guarded("ordering_rain", [&] {
        const Scenario s = preset("fig7");
        const auto g = op_grid(s);  // channels: light, moderate, heavy
        Check c{"ordering_rain", true, 0, 0, 0, "OP(2) < OP(10) < OP(50 mm/h) at every SNR"};
        for (std::size_t i = 0; i < s.snr_axis_db.size(); ++i)
            if (!(g[0][i][0] < g[1][i][0] && g[1][i][0] < g[2][i][0])) {
                c.passed = false;
                c.detail += fmt::format("; violated at {} dB", s.snr_axis_db[i]);
            }
        return c;
    }));

    out.push_back(guarded("ordering_eta", [&] {
        const Scenario s = preset("fig5");
        SweepOptions opt;
        opt.set_metrics("op");
        const SweepResult r = run_eta_sweep(s, opt);
        Check c{"ordering_eta", true, 0, 0, 0, "OP non-increasing in eta for every R_b"};
        const std::size_t nr = s.rates_bpcu.size();
        for (std::size_t i = 1; i < s.eta_axis.size(); ++i)
            for (std::size_t j = 0; j < nr; ++j)
                if (!(r.rows[i * nr + j].op_analytic.value() <= r.rows[(i - 1) * nr + j].op_analytic.value())) {
                    c.passed = false;
                    c.detail += fmt::format("; violated at eta {} R_b {}", s.eta_axis[i], s.rates_bpcu[j]);
                }
        return c;
    }));

    out.push_back(guarded("corrupted_scenario_rejected", [&] {
        nlohmann::json j = to_json(preset("fhs"));
        j["sr"]["b"] = -0.063;
        Check c{"corrupted_scenario_rejected", false, 0, 0, 0, "negative b must raise a parameter error"};
        try {
            scenario_from_json(j);
        } catch (const ParameterError& e) {
            c.passed = true;
            c.detail = e.what();
        }
        return c;
    }));

    out.push_back(guarded("mc_smoke", [&] {
        Worst w;
        mc::McConfig cfg;
        cfg.trials = 100'000;
        cfg.seed = 2024;
        cfg.workers = workers;
        for (const auto& p : presets) {
            const auto z = mc::sample_products(p.nak, p.sr, cfg);
            for (double snr : {10.0, 20.0, 30.0}) {
                const analytic::PerfQuery q{snr, 1.0, p.nak, p.sr};
                const double cf = analytic::outage_probability(q);
                if (cf < 1e-3) continue;
                const auto est = mc::outage_from_samples(z, q.avg_snr_linear(), 1.0);
                w.see(cf, est.value, 4.0 * binomial_se(cf, est.trials), fmt::format("{} {} dB", p.name, snr));
            }
        }
        return w.check("mc_smoke");
    }));

    out.push_back(guarded("determinism_across_workers", [&] {
        const Scenario s = preset("fig2");
        SweepOptions opt;
        opt.set_engines("analytic,mc");
        opt.mc.trials = 20'000;
        opt.mc.seed = 7;
        std::ostringstream a, b;
        opt.mc.workers = 1;
        opt.mc.batch = 1000;
        write_csv(a, run_sweep(s, opt), run_config(s, opt));
        opt.mc.workers = std::max(2u, workers);
        opt.mc.batch = 7777;
        write_csv(b, run_sweep(s, opt), run_config(s, opt));
        return Check{"determinism_across_workers", a.str() == b.str(), 0, 0, 0, "CSV bytes equal"};
    }));
}

void full_checks(std::vector<Check>& out, unsigned workers) {
    const auto presets = channel_presets();
    mc::McConfig cfg;
    cfg.trials = 1'000'000;
    cfg.seed = 20240601;
    cfg.workers = workers;

    Worst op_w, ec_w, mean_w, jensen_w;
    for (const auto& p : presets) {
        const auto z = mc::sample_products(p.nak, p.sr, cfg);
        for (double snr = 0.0; snr <= 40.0; snr += 5.0) {
            const analytic::PerfQuery q0{snr, 1.0, p.nak, p.sr};
            const double g = q0.avg_snr_linear();
            for (double rb : {1.0, 2.0, 3.0}) {
                const analytic::PerfQuery q{snr, rb, p.nak, p.sr};
                const double cf = analytic::outage_probability(q);
                if (cf < 1e-4) continue;
                const auto est = mc::outage_from_samples(z, g, rb);
                op_w.see(cf, est.value, 3.0 * binomial_se(cf, est.trials),
                         fmt::format("{} {} dB R_b={}", p.name, snr, rb));
            }
            const auto ec = mc::ergodic_capacity_from_samples(z, g);
            ec_w.see(oracle::ergodic_capacity_quadrature(p.nak, p.sr, g).value, ec.value, 3.0 * ec.std_error,
                     fmt::format("{} {} dB", p.name, snr));
            const double ub = analytic::ergodic_capacity_upper(q0);
            jensen_w.see(0.0, std::min(0.0, ub - (ec.value - 3.0 * ec.std_error)), 0.0,
                         fmt::format("{} {} dB", p.name, snr));
        }
        const auto mean = mc::mean_from_samples(z, 1.0);
        mean_w.see(p.nak.mean_power() * p.sr.mean_power(), mean.value, 4.0 * mean.std_error, p.name);
    }
    out.push_back(op_w.check("mc_op_vs_closed_form"));
    out.push_back(ec_w.check("mc_ec_vs_quadrature"));
    out.push_back(mean_w.check("mc_mean_vs_closed_form"));
    out.push_back(jensen_w.check("jensen_upper_bound"));

    out.push_back(guarded("sampler_ks", [&] {
        Worst w;
        mc::McConfig kcfg = cfg;
        kcfg.trials = 100'000;
        const double crit = 1.628 / std::sqrt(static_cast<double>(kcfg.trials));
        for (const auto& p : presets) {
            auto y = mc::sample_shadowed_rician(p.sr, kcfg);
            std::sort(y.begin(), y.end());
            const double d = mc::ks_statistic(y, oracle::sr_cdf_sorted(p.sr, y));
            w.see(0.0, std::max(0.0, d - crit), 0.0, fmt::format("{} D={} crit={}", p.name, d, crit));
        }
        return w.check("sampler_ks");
    }));

    const auto fhs = preset("fhs");
    out.push_back(guarded("readoff_fhs_op_25db", [&] {
        const double op = analytic::outage_probability({25.0, 1.0, fhs.nak, fhs.sr});
        return within("readoff_fhs_op_25db", -1.0, std::log10(op), 0.5, "log10 OP");
    }));
    out.push_back(guarded("readoff_fig5_op_20db", [&] {
        const auto s = preset("fig5");
        const double op = analytic::outage_probability({s.eta_sweep_snr_db, 1.0, s.nak, s.sr});
        return within("readoff_fig5_op_20db", -3.0, std::log10(op), 0.5, "log10 OP at eta = 1");
    }));
    out.push_back(guarded("readoff_ec_gap_10db", [&] {
        const auto s = preset("fig3");
        const double eff = analytic::effective_snr_db(10.0, s.eh.eta, s.eh.rho, false);
        const double g = std::pow(10.0, eff / 10.0);
        const auto ch = s.channels();  // fhs, as, ils
        const auto ec_f = mc::ergodic_capacity_from_samples(mc::sample_products(ch[0].nak, ch[0].sr, cfg), g);
        const auto ec_i = mc::ergodic_capacity_from_samples(mc::sample_products(ch[2].nak, ch[2].sr, cfg), g);
        return within("readoff_ec_gap_10db", 0.65, ec_i.value - ec_f.value, 0.2, "bpcu, eta = 0.2");
    }));
}

} // namespace

bool ValidationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

nlohmann::ordered_json ValidationReport::to_json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : checks)
        arr.push_back({{"name", c.name},
                       {"passed", c.passed},
                       {"expected", c.expected},
                       {"actual", c.actual},
                       {"tolerance", c.tolerance},
                       {"detail", c.detail}});
    return {{"tool", "hapseh"}, {"version", tool_version}, {"level", level}, {"passed", passed()}, {"checks", arr}};
}

ValidationReport run_validation(ValidationLevel level, unsigned workers) {
    ValidationReport r;
    r.level = level == ValidationLevel::quick ? "quick" : "full";
    quick_checks(r.checks, workers);
    if (level == ValidationLevel::full) full_checks(r.checks, workers);
    return r;
}

} // namespace hapseh::app
