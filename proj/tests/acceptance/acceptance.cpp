// Acceptance run: one PASS/FAIL line per criterion. With no argument every
// criterion runs; with a number only that one does. Exit status is non-zero
// when any selected criterion fails.

#include "hapseh/analytic.hpp"
#include "hapseh/channel.hpp"
#include "hapseh/linkbudget.hpp"
#include "hapseh/montecarlo.hpp"
#include "hapseh/oracle.hpp"
#include "hapseh/scenario.hpp"
#include "hapseh/sweep.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace hapseh;
using namespace hapseh::app;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    std::vector<std::string> sub;  // extra lines for multi-part criteria
};

struct Channel {
    std::string name;
    NakagamiPowerParams nak;
    ShadowedRicianParams sr;
};

std::vector<Channel> channels() {
    std::vector<Channel> out;
    for (const char* n : {"fhs", "as", "ils", "fig5"}) {
        const Scenario s = preset(n);
        out.push_back({n, s.nak, s.sr});
    }
    return out;
}

std::vector<double> snr_grid() {
    std::vector<double> g;
    for (int i = 0; i <= 8; ++i) g.push_back(5.0 * i);
    return g;
}

const std::vector<double> kRates{1.0, 2.0, 3.0};

mc::McConfig mc_config(std::uint64_t trials) {
    mc::McConfig c;
    c.trials = trials;
    c.seed = 20240601;
    c.workers = 0;
    return c;
}

double binomial_se(double p, std::uint64_t n) { return std::sqrt(p * (1.0 - p) / static_cast<double>(n)); }

// 1: closed-form OP against 2-D quadrature.
Outcome oracle_equivalence() {
    Outcome o;
    double worst = 0.0;
    std::string where;
    for (const auto& c : channels())
        for (double snr : snr_grid())
            for (double rb : kRates) {
                const analytic::PerfQuery q{snr, rb, c.nak, c.sr};
                const double d = std::abs(analytic::outage_probability(q) - oracle::outage_quadrature(q).value);
                if (!(d <= worst)) {
                    worst = d;
                    where = fmt::format("{} {} dB Rb={}", c.name, snr, rb);
                }
            }
    o.pass = worst <= 1e-6;
    o.detail = fmt::format("max |closed form - quadrature| = {:.3g} at {} (tol 1e-6)", worst, where);
    return o;
}

// 2: Monte Carlo OP and EC at 10^6 trials.
Outcome mc_agreement() {
    Outcome o;
    const auto cfg = mc_config(1'000'000);
    double op_ratio = 0.0, ec_ratio = 0.0;
    std::string op_where, ec_where;
    int op_points = 0;
    for (const auto& c : channels()) {
        const auto z = mc::sample_products(c.nak, c.sr, cfg);
        for (double snr : snr_grid()) {
            const double g = std::pow(10.0, snr / 10.0);
            for (double rb : kRates) {
                const double cf = analytic::outage_probability({snr, rb, c.nak, c.sr});
                if (cf < 1e-4) continue;
                ++op_points;
                const auto est = mc::outage_from_samples(z, g, rb);
                const double r = std::abs(est.value - cf) / binomial_se(cf, est.trials);
                if (!(r <= op_ratio)) {
                    op_ratio = r;
                    op_where = fmt::format("{} {} dB Rb={}", c.name, snr, rb);
                }
            }
            const auto ec = mc::ergodic_capacity_from_samples(z, g);
            const double ref = oracle::ergodic_capacity_quadrature(c.nak, c.sr, g).value;
            const double r = std::abs(ec.value - ref) / ec.std_error;
            if (!(r <= ec_ratio)) {
                ec_ratio = r;
                ec_where = fmt::format("{} {} dB", c.name, snr);
            }
        }
    }
    o.pass = op_ratio <= 3.0 && ec_ratio <= 3.0;
    o.detail = fmt::format("worst OP deviation {:.2f} se at {} over {} points; worst EC deviation {:.2f} se at {}",
                           op_ratio, op_where, op_points, ec_ratio, ec_where);
    return o;
}

// 3: normalizations.
Outcome normalization() {
    Outcome o;
    double mass = 0.0, pdf = 0.0;
    for (const auto& c : channels()) {
        const auto t = analytic::outage_terms({20.0, 1.0, c.nak, c.sr});
        mass = std::max(mass, std::abs(t.mass_term - 1.0));
        pdf = std::max(pdf, std::abs(oracle::nakagami_mass_quadrature(c.nak).value - 1.0));
        pdf = std::max(pdf, std::abs(oracle::sr_cdf_quadrature(c.sr, INFINITY).value - 1.0));
    }
    o.pass = mass <= 1e-12 && pdf <= 1e-8;
    o.detail = fmt::format("first summand |S-1| = {:.3g} (tol 1e-12); pdf mass |I-1| = {:.3g} (tol 1e-8)", mass, pdf);
    return o;
}

// 4: E[γ0] identity and Monte Carlo mean.
Outcome moment_identity() {
    Outcome o;
    const auto cfg = mc_config(1'000'000);
    double rel = 0.0, se_ratio = 0.0;
    for (const auto& c : channels()) {
        const analytic::PerfQuery q{10.0, 1.0, c.nak, c.sr};
        const double expect = 10.0 * c.nak.mean_power() * (2.0 * c.sr.b + c.sr.omega);
        rel = std::max(rel, std::abs(analytic::mean_gamma0(q) / expect - 1.0));
        const auto m = mc::mc_mean_gamma0(q, cfg);
        se_ratio = std::max(se_ratio, std::abs(m.value - analytic::mean_gamma0(q)) / m.std_error);
    }
    o.pass = rel <= 1e-10 && se_ratio <= 4.0;
    o.detail = fmt::format("relative error {:.3g} (tol 1e-10); worst MC deviation {:.2f} se (tol 4)", rel, se_ratio);
    return o;
}

// 5: the log2(1 + E[γ0]) bound dominates the simulated capacity.
Outcome jensen() {
    Outcome o;
    const auto cfg = mc_config(1'000'000);
    double slack = INFINITY;
    std::string where;
    for (const auto& c : channels()) {
        const auto z = mc::sample_products(c.nak, c.sr, cfg);
        for (double snr : snr_grid()) {
            const analytic::PerfQuery q{snr, 1.0, c.nak, c.sr};
            const auto ec = mc::ergodic_capacity_from_samples(z, q.avg_snr_linear());
            const double s = analytic::ergodic_capacity_upper(q) - (ec.value - 3.0 * ec.std_error);
            if (s < slack) {
                slack = s;
                where = fmt::format("{} {} dB", c.name, snr);
            }
        }
    }
    o.pass = slack >= 0.0;
    o.detail = fmt::format("min (bound - (EC_mc - 3 se)) = {:.4g} bpcu at {}", slack, where);
    return o;
}

// 6: noise density.
Outcome noise() {
    const double n0 = linkbudget::noise_psd_db({-228.6, 22.3805, 76.02});
    return {std::abs(n0 - (-130.1995)) <= 1e-4, fmt::format("N0 = {:.6f} dB (target -130.1995 +/- 1e-4)", n0), {}};
}

// 7: harvested power of the three budget cases.
Outcome budget_cases() {
    Outcome o;
    const std::vector<std::tuple<const char*, double, double>> cases{
        {"case1", 26.2, 0.5}, {"case2", 25.0, 1.0}, {"case3", 25.0, 1.0}};
    for (const auto& [name, target, tol] : cases) {
        const double p = run_budget(preset(name)).harvested_dbm;
        const bool ok = std::abs(p - target) <= tol;
        o.pass = o.pass && ok;
        o.detail += fmt::format("{}{} {:.3f} dBm ({} +/- {})", o.detail.empty() ? "" : "; ", name, p, target, tol);
    }
    return o;
}

// 8: values read off the published curves.
Outcome readoffs() {
    Outcome o;
    const auto fhs = preset("fhs");
    const double a = analytic::outage_probability({25.0, 1.0, fhs.nak, fhs.sr});
    const bool pa = std::abs(std::log10(a) + 1.0) <= 0.5;

    const auto f5 = preset("fig5");
    const double eff = analytic::effective_snr_db(20.0, 1.0, f5.eh.rho, false);
    const double b = analytic::outage_probability({eff, 1.0, f5.nak, f5.sr});
    const bool pb = std::abs(std::log10(b) + 3.0) <= 0.5;

    const auto f3 = preset("fig3");
    const double g = std::pow(10.0, analytic::effective_snr_db(10.0, 0.2, f3.eh.rho, false) / 10.0);
    const auto ch = f3.channels();
    const auto find = [&](const std::string& label) {
        for (const auto& c : ch)
            if (c.label == label) return c;
        throw std::runtime_error("fig3 has no channel " + label);
    };
    const auto cf = find("fhs"), ci = find("ils");
    const double gap = oracle::ergodic_capacity_quadrature(ci.nak, ci.sr, g).value -
                       oracle::ergodic_capacity_quadrature(cf.nak, cf.sr, g).value;
    const bool pc = std::abs(gap - 0.65) <= 0.2;

    o.pass = pa && pb && pc;
    o.sub.push_back(fmt::format("8a {} FHS OP at 25 dB, Rb=1: {:.4g} (log10 {:.3f}, target -1 +/- 0.5)",
                                pa ? "PASS" : "FAIL", a, std::log10(a)));
    o.sub.push_back(fmt::format("8b {} fig5 OP at 20 dB, eta=1, Rb=1: {:.4g} (log10 {:.3f}, target -3 +/- 0.5)",
                                pb ? "PASS" : "FAIL", b, std::log10(b)));
    o.sub.push_back(fmt::format("8c {} EC gap ILS-FHS at 10 dB, eta=0.2: {:.4f} bpcu (target 0.65 +/- 0.2)",
                                pc ? "PASS" : "FAIL", gap));
    o.detail = fmt::format("{}/3 read-offs within tolerance", int(pa) + int(pb) + int(pc));
    return o;
}

std::vector<std::vector<double>> op_by_channel(const Scenario& s, double rb) {
    SweepOptions opt;
    opt.set_metrics("op");
    Scenario t = s;
    t.rates_bpcu = {rb};
    const auto r = run_sweep(t, opt);
    std::vector<std::vector<double>> out(t.channels().size());
    std::size_t k = 0;
    for (auto& v : out)
        for (std::size_t i = 0; i < t.snr_axis_db.size(); ++i) v.push_back(r.rows.at(k++).op_analytic.value());
    return out;
}

// 9: orderings by rate, shadowing, rain and η.
Outcome orderings() {
    Outcome o;
    int bad_rate = 0, bad_shadow = 0, bad_rain = 0, bad_eta = 0;

    for (const auto& c : channels())
        for (double snr : snr_grid()) {
            const double p1 = analytic::outage_probability({snr, 1.0, c.nak, c.sr});
            const double p2 = analytic::outage_probability({snr, 2.0, c.nak, c.sr});
            const double p3 = analytic::outage_probability({snr, 3.0, c.nak, c.sr});
            if (!(p1 < p2 && p2 < p3)) ++bad_rate;
        }

    // Each figure preset at its own rate set.
    const Scenario f4 = preset("fig4");
    for (double rb : f4.rates_bpcu) {
        std::map<std::string, std::vector<double>> by;
        const auto ops = op_by_channel(f4, rb);
        const auto ch = f4.channels();
        for (std::size_t i = 0; i < ch.size(); ++i) by[ch[i].label] = ops[i];
        for (std::size_t i = 0; i < f4.snr_axis_db.size(); ++i)
            if (!(by.at("ils")[i] < by.at("as")[i] && by.at("as")[i] < by.at("fhs")[i])) ++bad_shadow;
    }

    const Scenario f7 = preset("fig7");
    const auto ch7 = f7.channels();
    std::vector<std::size_t> order(ch7.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return ch7[a].rain->rate_r001_mm_h < ch7[b].rain->rate_r001_mm_h; });
    std::string rates;
    for (std::size_t i : order) rates += fmt::format("{}{}", rates.empty() ? "" : "<", ch7[i].rain->rate_r001_mm_h);
    for (double rb : f7.rates_bpcu) {
        const auto ops = op_by_channel(f7, rb);
        for (std::size_t i = 0; i < f7.snr_axis_db.size(); ++i)
            for (std::size_t k = 1; k < order.size(); ++k)
                if (!(ops[order[k - 1]][i] < ops[order[k]][i])) ++bad_rain;
    }

    const Scenario f5 = preset("fig5");
    SweepOptions opt;
    opt.set_metrics("op");
    const auto r = run_eta_sweep(f5, opt);
    const std::size_t nr = f5.rates_bpcu.size();
    for (std::size_t i = 1; i < f5.eta_axis.size(); ++i)
        for (std::size_t j = 0; j < nr; ++j)
            if (!(r.rows[i * nr + j].op_analytic.value() <= r.rows[(i - 1) * nr + j].op_analytic.value())) ++bad_eta;

    o.pass = bad_rate + bad_shadow + bad_rain + bad_eta == 0;
    o.sub.push_back(fmt::format("9a {} OP(Rb=1) < OP(2) < OP(3): {} violations", bad_rate ? "FAIL" : "PASS", bad_rate));
    o.sub.push_back(
        fmt::format("9b {} OP(ils) < OP(as) < OP(fhs): {} violations", bad_shadow ? "FAIL" : "PASS", bad_shadow));
    o.sub.push_back(fmt::format("9c {} OP ordered by rain rate {} mm/h: {} violations", bad_rain ? "FAIL" : "PASS",
                                rates, bad_rain));
    o.sub.push_back(fmt::format("9d {} OP non-increasing in eta: {} violations", bad_eta ? "FAIL" : "PASS", bad_eta));
    o.detail = fmt::format("{} violations", bad_rate + bad_shadow + bad_rain + bad_eta);
    return o;
}

// 10: Kolmogorov-Smirnov certification of the shadowed-Rician sampler.
Outcome sampler_ks() {
    Outcome o;
    const auto cfg = mc_config(100'000);
    const double crit = 1.628 / std::sqrt(100'000.0);
    for (const auto& c : channels()) {
        auto y = mc::sample_shadowed_rician(c.sr, cfg);
        std::sort(y.begin(), y.end());
        const double d = mc::ks_statistic(y, oracle::sr_cdf_sorted(c.sr, y));
        o.pass = o.pass && d < crit;
        o.detail += fmt::format("{}{} D={:.5f}", o.detail.empty() ? "" : "; ", c.name, d);
    }
    o.detail += fmt::format(" (crit {:.5f} at 1%)", crit);
    return o;
}

// 11: byte-identical output across worker counts.
Outcome determinism() {
    Outcome o;
    Scenario s = preset("fig3");
    SweepOptions opt;
    opt.set_engines("analytic,mc");
    opt.mc.trials = 200'000;
    opt.mc.seed = 99;
    const auto render = [&](unsigned workers, std::uint64_t batch) {
        opt.mc.workers = workers;
        opt.mc.batch = batch;
        std::ostringstream os;
        write_csv(os, run_sweep(s, opt), run_config(s, opt));
        return os.str();
    };
    const std::string a = render(1, 65'536);
    const std::string b = render(4, 10'000);
    o.pass = a == b;
    o.detail = fmt::format("workers 1 vs 4: {} bytes, {}", a.size(), a == b ? "identical" : "DIFFERENT");
    return o;
}

} // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"oracle equivalence", oracle_equivalence},
        {"Monte-Carlo agreement", mc_agreement},
        {"normalization", normalization},
        {"moment identity", moment_identity},
        {"capacity bound ordering", jensen},
        {"noise density", noise},
        {"harvested-power cases", budget_cases},
        {"figure read-offs", readoffs},
        {"orderings", orderings},
        {"sampler KS", sampler_ks},
        {"determinism", determinism},
    };

    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        const int n = std::atoi(argv[i]);
        if (n < 1 || n > static_cast<int>(criteria.size())) {
            fmt::print(stderr, "usage: {} [criterion 1..{}]...\n", argv[0], criteria.size());
            return 2;
        }
        selected.push_back(n);
    }
    if (selected.empty())
        for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) selected.push_back(i);

    bool all = true;
    for (int n : selected) {
        const auto& [name, run] = criteria[n - 1];
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what(), {}};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        fmt::print("criterion {:2} {} {}: {} [{:.1f} s]\n", n, o.pass ? "PASS" : "FAIL", name, o.detail, secs);
        for (const auto& s : o.sub) fmt::print("    {}\n", s);
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
