#include "hapseh/errors.hpp"
#include "hapseh/scenario.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

using namespace hapseh;
using namespace hapseh::app;

TEST_SUITE("scenario") {

TEST_CASE("every preset round-trips through JSON") {
    const auto names = preset_names();
    for (const char* required : {"default", "fhs", "as", "ils", "fig5", "case1", "case2", "case3"})
        CHECK(is_preset(required));
    for (const auto& n : names) {
        CAPTURE(n);
        const Scenario s = preset(n);
        CHECK_NOTHROW(s.validate());
        const std::string text = to_json(s).dump();
        const Scenario back = scenario_from_json(nlohmann::json::parse(text));
        CHECK(back == s);
        CHECK(to_json(back).dump() == text);
    }
}

TEST_CASE("channel presets") {
    CHECK(preset("fhs").sr == ShadowedRicianParams{0.063, 1, 8.94e-4});
    CHECK(preset("as").sr == ShadowedRicianParams{0.126, 10, 0.835});
    CHECK(preset("ils").sr == ShadowedRicianParams{0.158, 19, 1.29});
    CHECK(preset("fig5").sr == ShadowedRicianParams{0.279, 2, 0.251});
    CHECK(preset("fig5").nak == NakagamiPowerParams::unit_mean(2));
    CHECK(preset("fig3").channels().size() == 3);
    CHECK(preset("default").channels().size() == 1);
}

TEST_CASE("unknown keys are rejected") {
    auto j = nlohmann::json::parse(to_json(preset("default")).dump());
    j["snr_axis"] = {1, 2};
    CHECK_THROWS_AS(scenario_from_json(j), ConfigError);
    j = nlohmann::json::parse(to_json(preset("default")).dump());
    j["sr"]["bb"] = 1;
    CHECK_THROWS_AS(scenario_from_json(j), ConfigError);
}

TEST_CASE("wrong types and non-integer severities") {
    auto j = nlohmann::json::parse(to_json(preset("default")).dump());
    j["sr"]["m2"] = 2.5;
    CHECK_THROWS_AS(scenario_from_json(j), ParameterError);
    j = nlohmann::json::parse(to_json(preset("default")).dump());
    j["nak"]["m1"] = 1.5;
    CHECK_THROWS_AS(scenario_from_json(j), ParameterError);
    j = nlohmann::json::parse(to_json(preset("default")).dump());
    j["freq_ghz"] = "17.7";
    CHECK_THROWS_AS(scenario_from_json(j), ConfigError);
    CHECK_THROWS_AS(scenario_from_json(nlohmann::json::array()), ConfigError);
}

TEST_CASE("partial files inherit defaults") {
    const Scenario s = scenario_from_json(nlohmann::json::parse(R"({"name": "x", "nak": {"m1": 4}})"));
    CHECK(s.name == "x");
    CHECK(s.nak.m1 == 4);
    CHECK(s.nak.mean_power() == doctest::Approx(1.0));
    CHECK(s.sr == Scenario{}.sr);
}

TEST_CASE("validation") {
    Scenario s = preset("default");
    s.snr_axis_db = {0, 5, 5};
    CHECK_THROWS_AS(s.validate(), ParameterError);
    s = preset("default");
    s.rates_bpcu = {};
    CHECK_THROWS_AS(s.validate(), ParameterError);
    s = preset("default");
    s.eta_axis = {0.0};
    CHECK_THROWS_AS(s.validate(), ParameterError);
    s = preset("fig3");
    s.variants[1].label = s.variants[0].label;
    CHECK_THROWS_AS(s.validate(), ParameterError);
}

TEST_CASE("loading from file or preset name") {
    CHECK(load_scenario("as") == preset("as"));
    CHECK_THROWS_AS(load_scenario("no-such-preset"), ConfigError);
    CHECK_THROWS_AS(preset("no-such-preset"), ConfigError);
    const std::string path = "scenario_test_tmp.json";
    {
        std::ofstream os(path);
        os << to_json(preset("ils")).dump(2);
    }
    CHECK(load_scenario(path) == preset("ils"));
    {
        std::ofstream os(path);
        os << "{not json";
    }
    CHECK_THROWS_AS(load_scenario(path), ConfigError);
    std::remove(path.c_str());
}

TEST_CASE("ranges and lists") {
    const auto a = parse_range("0:40:5");
    REQUIRE(a.size() == 9);
    CHECK(a.front() == 0.0);
    CHECK(a.back() == 40.0);
    const auto e = parse_range("0.1:1:0.1");
    REQUIRE(e.size() == 10);
    CHECK(e.back() == doctest::Approx(1.0));
    CHECK(e[2] == doctest::Approx(0.3));
    CHECK(parse_range("3:3:1").size() == 1);
    CHECK_THROWS_AS(parse_range("5:0:1"), ConfigError);
    CHECK_THROWS_AS(parse_range("0:5:0"), ConfigError);
    CHECK_THROWS_AS(parse_range("0:5"), ConfigError);
    CHECK_THROWS_AS(parse_range("a:b:c"), ConfigError);
    CHECK(parse_list("1,2,3") == std::vector<double>{1, 2, 3});
    CHECK_THROWS_AS(parse_list("1,,3"), ConfigError);
    CHECK_THROWS_AS(parse_list(""), ConfigError);
}

}
