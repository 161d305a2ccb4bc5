#include "hapseh/scenario.hpp"

#include "hapseh/errors.hpp"

#include <cmath>
#include <exception>
#include <fstream>
#include <set>
#include <sstream>

namespace hapseh::app {

using nlohmann::json;
using nlohmann::ordered_json;
using linkbudget::RainParams;

namespace {

// Reads keys off a JSON object and rejects any it did not consume.
class Reader {
public:
    Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(path_ + ": expected an object");
    }
    ~Reader() noexcept(false) {
        if (std::uncaught_exceptions() > 0) return;
        for (const auto& item : j_.items())
            if (!seen_.count(item.key())) throw ConfigError(path_ + "." + item.key() + ": unknown key");
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    const json* take(const std::string& key) {
        seen_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    void real(const std::string& key, double& out) {
        if (const json* v = take(key)) {
            if (!v->is_number()) throw ConfigError(path_ + "." + key + ": expected a number");
            out = v->get<double>();
        }
    }

    void integer(const std::string& key, int& out) {
        if (const json* v = take(key)) {
            if (!v->is_number()) throw ConfigError(path_ + "." + key + ": expected a number");
            const double d = v->get<double>();
            if (d != std::floor(d) || std::abs(d) > 1e6)
                throw ParameterError(path_ + "." + key + ": non-integer severity parameters are not supported");
            out = static_cast<int>(d);
        }
    }

    void boolean(const std::string& key, bool& out) {
        if (const json* v = take(key)) {
            if (!v->is_boolean()) throw ConfigError(path_ + "." + key + ": expected true or false");
            out = v->get<bool>();
        }
    }

    void string(const std::string& key, std::string& out) {
        if (const json* v = take(key)) {
            if (!v->is_string()) throw ConfigError(path_ + "." + key + ": expected a string");
            out = v->get<std::string>();
        }
    }

    void strings(const std::string& key, std::vector<std::string>& out) {
        if (const json* v = take(key)) {
            if (!v->is_array()) throw ConfigError(path_ + "." + key + ": expected an array of strings");
            out.clear();
            for (const auto& e : *v) {
                if (!e.is_string()) throw ConfigError(path_ + "." + key + ": expected an array of strings");
                out.push_back(e.get<std::string>());
            }
        }
    }

    void reals(const std::string& key, std::vector<double>& out) {
        if (const json* v = take(key)) {
            if (!v->is_array()) throw ConfigError(path_ + "." + key + ": expected an array of numbers");
            out.clear();
            for (const auto& e : *v) {
                if (!e.is_number()) throw ConfigError(path_ + "." + key + ": expected an array of numbers");
                out.push_back(e.get<double>());
            }
        }
    }

    void optional_real(const std::string& key, std::optional<double>& out) {
        if (const json* v = take(key)) {
            if (v->is_null()) {
                out.reset();
                return;
            }
            if (!v->is_number()) throw ConfigError(path_ + "." + key + ": expected a number or null");
            out = v->get<double>();
        }
    }

    std::string sub(const std::string& key) const { return path_ + "." + key; }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

ordered_json nak_json(const NakagamiPowerParams& p) { return {{"m1", p.m1}, {"two_sigma_sq", p.two_sigma_sq}}; }

ordered_json sr_json(const ShadowedRicianParams& p) { return {{"b", p.b}, {"m2", p.m2}, {"omega", p.omega}}; }

ordered_json rain_json(const RainParams& p) {
    return {{"rain_k", p.rain_k},
            {"rain_alpha", p.rain_alpha},
            {"rate_r001_mm_h", p.rate_r001_mm_h},
            {"effective_path_km", p.effective_path_km}};
}

ordered_json losses_json(const HopLosses& l) { return {{"l_a_db", l.l_a_db}, {"l_o_db", l.l_o_db}}; }

ordered_json opt_real(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

NakagamiPowerParams read_nak(const json& j, const std::string& path, NakagamiPowerParams p) {
    Reader r(j, path);
    r.integer("m1", p.m1);
    // Without an explicit scale the law is unit-mean.
    if (!r.has("two_sigma_sq") && p.m1 >= 1) p.two_sigma_sq = 1.0 / p.m1;
    r.real("two_sigma_sq", p.two_sigma_sq);
    return p;
}

ShadowedRicianParams read_sr(const json& j, const std::string& path, ShadowedRicianParams p) {
    Reader r(j, path);
    r.real("b", p.b);
    r.integer("m2", p.m2);
    r.real("omega", p.omega);
    return p;
}

RainParams read_rain(const json& j, const std::string& path) {
    RainParams p;
    Reader r(j, path);
    r.real("rain_k", p.rain_k);
    r.real("rain_alpha", p.rain_alpha);
    r.real("rate_r001_mm_h", p.rate_r001_mm_h);
    r.real("effective_path_km", p.effective_path_km);
    return p;
}

HopLosses read_losses(const json& j, const std::string& path, HopLosses l) {
    Reader r(j, path);
    r.real("l_a_db", l.l_a_db);
    r.real("l_o_db", l.l_o_db);
    return l;
}

std::optional<RainParams> read_opt_rain(const json* v, const std::string& path) {
    if (!v || v->is_null()) return std::nullopt;
    return read_rain(*v, path);
}

// Channel presets used across the figure scenarios.
const ShadowedRicianParams kFhs{0.063, 1, 8.94e-4};
const ShadowedRicianParams kAs{0.126, 10, 0.835};
const ShadowedRicianParams kIls{0.158, 19, 1.29};
const ShadowedRicianParams kFig5{0.279, 2, 0.251};

std::vector<double> default_axis() { return parse_range("0:40:5"); }

Scenario with_channel(std::string name, const ShadowedRicianParams& sr) {
    Scenario s;
    s.name = std::move(name);
    s.nak = NakagamiPowerParams::unit_mean(sr.m2);
    s.sr = sr;
    s.snr_axis_db = default_axis();
    return s;
}

std::vector<ChannelVariant> shadowing_levels() {
    return {{"fhs", NakagamiPowerParams::unit_mean(1), kFhs, std::nullopt},
            {"as", NakagamiPowerParams::unit_mean(10), kAs, std::nullopt},
            {"ils", NakagamiPowerParams::unit_mean(19), kIls, std::nullopt}};
}

Scenario budget_case(std::string name, double zenith_deg, double p_h1_w, double eta) {
    Scenario s = with_channel(std::move(name), kAs);
    s.geometry.alt_h1_km = 20.0;
    s.geometry.alt_h2_km = 21.0;
    s.geometry.zenith_h1h2_deg = zenith_deg;
    s.eh.p_h1_w = p_h1_w;
    s.eh.eta = eta;
    s.loss_h1h2 = {0.0216, 0.0};
    s.loss_h2g = {0.0108, 0.0};
    s.notes = {"harvested-power budget: inter-HAPS hop carries free-space and gaseous loss only"};
    return s;
}

} // namespace

void Scenario::validate() const {
    if (name.empty()) throw ParameterError("scenario: name must not be empty");
    geometry.validate();
    gains.validate();
    eh.validate();
    nak.validate();
    sr.validate();
    sr_derived(sr);
    if (rain) rain->validate();
    if (!(freq_ghz > 0.0) || !std::isfinite(freq_ghz)) throw ParameterError("scenario: freq_ghz must be positive");
    for (const auto* d : {&d_h1h2_km, &d_h2g_km})
        if (*d && !(**d > 0.0)) throw ParameterError("scenario: literal distances must be positive");
    for (const HopLosses* l : {&loss_h1h2, &loss_h2g})
        if (!(l->l_a_db >= 0.0) || !(l->l_o_db >= 0.0)) throw ParameterError("scenario: loss terms must be >= 0 dB");
    for (double p : {power.p_propulsion_w, power.p_payload_w, power.p_comm_w})
        if (!(p >= 0.0)) throw ParameterError("scenario: power budget terms must be >= 0 W");
    if (snr_axis_db.empty()) throw ParameterError("scenario: snr_axis_db must not be empty");
    for (std::size_t i = 0; i < snr_axis_db.size(); ++i) {
        if (!std::isfinite(snr_axis_db[i])) throw ParameterError("scenario: snr_axis_db values must be finite");
        if (i > 0 && !(snr_axis_db[i] > snr_axis_db[i - 1]))
            throw ParameterError("scenario: snr_axis_db must be strictly increasing");
    }
    if (rates_bpcu.empty()) throw ParameterError("scenario: rates_bpcu must not be empty");
    for (double r : rates_bpcu)
        if (!(r > 0.0) || !std::isfinite(r)) throw ParameterError("scenario: rates must be positive");
    for (double e : eta_axis)
        if (!(e > 0.0 && e <= 1.0)) throw ParameterError("scenario: eta_axis values must lie in (0, 1]");
    if (!std::isfinite(eta_sweep_snr_db)) throw ParameterError("scenario: eta_sweep_snr_db must be finite");
    std::set<std::string> labels;
    for (const auto& c : channels()) {
        c.nak.validate();
        sr_derived(c.sr);
        if (c.rain) c.rain->validate();
        if (!labels.insert(c.label).second) throw ParameterError("scenario: duplicate variant label " + c.label);
    }
}

std::vector<Channel> Scenario::channels() const {
    if (variants.empty()) return {{name, nak, sr, rain}};
    std::vector<Channel> out;
    for (const auto& v : variants) {
        if (v.label.empty()) throw ParameterError("scenario: variant label must not be empty");
        out.push_back({v.label, v.nak.value_or(nak), v.sr.value_or(sr), v.rain ? v.rain : rain});
    }
    return out;
}

ordered_json to_json(const Scenario& s) {
    ordered_json j;
    j["name"] = s.name;
    j["notes"] = s.notes;
    j["geometry"] = {{"alt_h1_km", s.geometry.alt_h1_km},
                     {"alt_h2_km", s.geometry.alt_h2_km},
                     {"alt_g_km", s.geometry.alt_g_km},
                     {"zenith_h1h2_deg", s.geometry.zenith_h1h2_deg},
                     {"zenith_h2g_deg", s.geometry.zenith_h2g_deg}};
    j["gains"] = {{"gt_h1_dbi", s.gains.gt_h1_dbi},
                  {"gr_h2_dbi", s.gains.gr_h2_dbi},
                  {"gt_h2_dbi", s.gains.gt_h2_dbi},
                  {"gr_g_dbi", s.gains.gr_g_dbi}};
    j["noise"] = {{"k_db", s.noise.k_db}, {"t_n_dbk", s.noise.t_n_dbk}, {"bandwidth_dbhz", s.noise.bandwidth_dbhz}};
    j["eh"] = {{"eta", s.eh.eta}, {"rho", s.eh.rho}, {"p_h1_w", s.eh.p_h1_w}};
    j["power"] = {{"p_propulsion_w", s.power.p_propulsion_w},
                  {"p_payload_w", s.power.p_payload_w},
                  {"p_comm_w", s.power.p_comm_w}};
    j["freq_ghz"] = s.freq_ghz;
    j["d_h1h2_km"] = opt_real(s.d_h1h2_km);
    j["d_h2g_km"] = opt_real(s.d_h2g_km);
    j["loss_h1h2"] = losses_json(s.loss_h1h2);
    j["loss_h2g"] = losses_json(s.loss_h2g);
    j["nak"] = nak_json(s.nak);
    j["sr"] = sr_json(s.sr);
    j["rain"] = s.rain ? rain_json(*s.rain) : ordered_json(nullptr);
    ordered_json vars = ordered_json::array();
    for (const auto& v : s.variants) {
        ordered_json e;
        e["label"] = v.label;
        if (v.nak) e["nak"] = nak_json(*v.nak);
        if (v.sr) e["sr"] = sr_json(*v.sr);
        if (v.rain) e["rain"] = rain_json(*v.rain);
        vars.push_back(std::move(e));
    }
    j["variants"] = std::move(vars);
    j["snr_axis_db"] = s.snr_axis_db;
    j["rates_bpcu"] = s.rates_bpcu;
    j["eta_axis"] = s.eta_axis;
    j["eta_sweep_snr_db"] = s.eta_sweep_snr_db;
    j["axis_includes_eta"] = s.axis_includes_eta;
    return j;
}

Scenario scenario_from_json(const json& j) {
    Scenario s;
    {
        Reader r(j, "scenario");
        r.string("name", s.name);
        r.strings("notes", s.notes);
        if (const json* g = r.take("geometry")) {
            Reader rg(*g, r.sub("geometry"));
            rg.real("alt_h1_km", s.geometry.alt_h1_km);
            rg.real("alt_h2_km", s.geometry.alt_h2_km);
            rg.real("alt_g_km", s.geometry.alt_g_km);
            rg.real("zenith_h1h2_deg", s.geometry.zenith_h1h2_deg);
            rg.real("zenith_h2g_deg", s.geometry.zenith_h2g_deg);
        }
        if (const json* g = r.take("gains")) {
            Reader rg(*g, r.sub("gains"));
            rg.real("gt_h1_dbi", s.gains.gt_h1_dbi);
            rg.real("gr_h2_dbi", s.gains.gr_h2_dbi);
            rg.real("gt_h2_dbi", s.gains.gt_h2_dbi);
            rg.real("gr_g_dbi", s.gains.gr_g_dbi);
        }
        if (const json* n = r.take("noise")) {
            Reader rn(*n, r.sub("noise"));
            rn.real("k_db", s.noise.k_db);
            rn.real("t_n_dbk", s.noise.t_n_dbk);
            rn.real("bandwidth_dbhz", s.noise.bandwidth_dbhz);
        }
        if (const json* e = r.take("eh")) {
            Reader re(*e, r.sub("eh"));
            re.real("eta", s.eh.eta);
            re.real("rho", s.eh.rho);
            re.real("p_h1_w", s.eh.p_h1_w);
        }
        if (const json* p = r.take("power")) {
            Reader rp(*p, r.sub("power"));
            rp.real("p_propulsion_w", s.power.p_propulsion_w);
            rp.real("p_payload_w", s.power.p_payload_w);
            rp.real("p_comm_w", s.power.p_comm_w);
        }
        r.real("freq_ghz", s.freq_ghz);
        r.optional_real("d_h1h2_km", s.d_h1h2_km);
        r.optional_real("d_h2g_km", s.d_h2g_km);
        if (const json* l = r.take("loss_h1h2")) s.loss_h1h2 = read_losses(*l, r.sub("loss_h1h2"), s.loss_h1h2);
        if (const json* l = r.take("loss_h2g")) s.loss_h2g = read_losses(*l, r.sub("loss_h2g"), s.loss_h2g);
        if (const json* n = r.take("nak")) s.nak = read_nak(*n, r.sub("nak"), s.nak);
        if (const json* c = r.take("sr")) s.sr = read_sr(*c, r.sub("sr"), s.sr);
        if (r.has("rain")) s.rain = read_opt_rain(r.take("rain"), r.sub("rain"));
        if (const json* vs = r.take("variants")) {
            if (!vs->is_array()) throw ConfigError("scenario.variants: expected an array");
            for (std::size_t i = 0; i < vs->size(); ++i) {
                const std::string path = r.sub("variants[" + std::to_string(i) + "]");
                Reader rv((*vs)[i], path);
                ChannelVariant v;
                rv.string("label", v.label);
                if (const json* n = rv.take("nak")) v.nak = read_nak(*n, path + ".nak", {});
                if (const json* c = rv.take("sr")) v.sr = read_sr(*c, path + ".sr", {});
                if (rv.has("rain")) v.rain = read_opt_rain(rv.take("rain"), path + ".rain");
                s.variants.push_back(std::move(v));
            }
        }
        r.reals("snr_axis_db", s.snr_axis_db);
        r.reals("rates_bpcu", s.rates_bpcu);
        r.reals("eta_axis", s.eta_axis);
        r.real("eta_sweep_snr_db", s.eta_sweep_snr_db);
        r.boolean("axis_includes_eta", s.axis_includes_eta);
    }
    if (s.snr_axis_db.empty()) s.snr_axis_db = default_axis();
    s.validate();
    return s;
}

std::vector<std::string> preset_names() {
    return {"default", "fhs", "as", "ils", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "case1", "case2", "case3"};
}

bool is_preset(const std::string& name) {
    for (const auto& n : preset_names())
        if (n == name) return true;
    return false;
}

Scenario preset(const std::string& name) {
    if (name == "default") {
        Scenario s = with_channel("default", kAs);
        s.notes = {"simulation-parameter table link budget; channel defaults to average shadowing"};
        return s;
    }
    const auto channel_only = [&](const ShadowedRicianParams& sr, const char* note) {
        Scenario s = with_channel(name, sr);
        s.notes = {note};
        return s;
    };
    if (name == "fhs") return channel_only(kFhs, "frequent heavy shadowing, m = 1");
    if (name == "as") return channel_only(kAs, "average shadowing, m = 10");
    if (name == "ils") return channel_only(kIls, "infrequent light shadowing, m = 19");
    if (name == "fig2") {
        Scenario s = with_channel("fig2", kFhs);
        s.notes = {"OP vs average SNR, frequent heavy shadowing, eta = 1"};
        return s;
    }
    if (name == "fig3") {
        Scenario s = with_channel("fig3", kAs);
        s.variants = shadowing_levels();
        s.eh.eta = 0.2;
        s.rates_bpcu = {3.0};
        s.notes = {"EC vs average SNR for the three shadowing levels at eta = 0.2, R_b = 3"};
        return s;
    }
    if (name == "fig4") {
        Scenario s = with_channel("fig4", kAs);
        s.variants = shadowing_levels();
        s.rates_bpcu = {1.0};
        s.notes = {"OP vs average SNR for the three shadowing levels",
                   "assumption: R_b = 1 and eta = 1 (not stated for this figure)"};
        return s;
    }
    if (name == "fig5") {
        Scenario s = with_channel("fig5", kFig5);
        s.nak = NakagamiPowerParams::unit_mean(2);
        s.eta_axis = parse_range("0.1:1:0.1");
        s.eta_sweep_snr_db = 20.0;
        s.notes = {"OP vs eta at 20 dB, b = 0.279, m = 2, Omega = 0.251"};
        return s;
    }
    if (name == "fig6") {
        Scenario s = with_channel("fig6", kAs);
        s.notes = {"throughput vs average SNR",
                   "assumption: average shadowing and eta = 1, the only configuration the figure text states"};
        return s;
    }
    if (name == "fig7") {
        Scenario s = with_channel("fig7", kAs);
        s.rates_bpcu = {1.0};
        const double k = 0.07, alpha = 1.08, l_e = 5.0;
        s.variants = {{"light_2mm_h", std::nullopt, std::nullopt, RainParams{k, alpha, 2.0, l_e}},
                      {"moderate_10mm_h", std::nullopt, std::nullopt, RainParams{k, alpha, 10.0, l_e}},
                      {"heavy_50mm_h", std::nullopt, std::nullopt, RainParams{k, alpha, 50.0, l_e}}};
        s.notes = {"OP vs average SNR for three rain rates on the HAPS-to-ground hop",
                   "assumption: rain_k = 0.07, rain_alpha = 1.08 (ITU-R P.838 order of magnitude near 18 GHz), "
                   "effective path 5 km; replace with P.838/P.530 values for real links",
                   "assumption: average shadowing, R_b = 1, eta = 1"};
        return s;
    }
    if (name == "case1") return budget_case("case1", 70.0, 200.0, 1.0);
    if (name == "case2") return budget_case("case2", 10.0, 20.0, 1.0);
    if (name == "case3") return budget_case("case3", 10.0, 200.0, 0.1);
    throw ConfigError("unknown preset '" + name + "'");
}

Scenario load_scenario(const std::string& name_or_path) {
    if (is_preset(name_or_path)) return preset(name_or_path);
    std::ifstream in(name_or_path);
    if (!in) throw ConfigError("'" + name_or_path + "' is neither a preset nor a readable scenario file");
    json j;
    try {
        j = json::parse(in, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ConfigError(name_or_path + ": " + e.what());
    }
    return scenario_from_json(j);
}

std::vector<double> parse_range(const std::string& spec) {
    std::vector<double> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) {
        try {
            std::size_t used = 0;
            parts.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("range '" + spec + "': expected start:stop:step");
        }
    }
    if (parts.size() != 3) throw ConfigError("range '" + spec + "': expected start:stop:step");
    const double start = parts[0], stop = parts[1], step = parts[2];
    if (!(step > 0.0) || !(stop >= start)) throw ConfigError("range '" + spec + "': need step > 0 and stop >= start");
    const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    if (n > 100000) throw ConfigError("range '" + spec + "': too many points");
    std::vector<double> out;
    // Values are start + i*step, rounded to 12 significant decimals so that
    // 0.1:1:0.1 lands on 0.3 rather than 0.30000000000000004.
    for (long i = 0; i <= n; ++i) {
        const double v = start + static_cast<double>(i) * step;
        std::ostringstream os;
        os.precision(12);
        os << v;
        out.push_back(std::stod(os.str()));
    }
    return out;
}

std::vector<double> parse_list(const std::string& spec) {
    std::vector<double> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("list '" + spec + "': expected comma-separated numbers");
        }
    }
    if (out.empty()) throw ConfigError("list '" + spec + "': empty");
    return out;
}

} // namespace hapseh::app
