#include "hapseh/errors.hpp"
#include "hapseh/linkbudget.hpp"

#include <doctest.h>

#include <cmath>

using namespace hapseh;
using namespace hapseh::linkbudget;

TEST_SUITE("linkbudget") {

TEST_CASE("slant distance") {
    CHECK(slant_distance(1.0, 0.0) == 1.0);
    CHECK(slant_distance(20.0, 0.0) == 20.0);
    CHECK(slant_distance(1.0, 70.0) == doctest::Approx(2.923804400163087252).epsilon(1e-15));
    CHECK(slant_distance(-1.0, 70.0) == slant_distance(1.0, 70.0));
    CHECK(slant_distance(1.0, 89.9999) > 5e5);
    CHECK_THROWS_AS(slant_distance(1.0, 90.0), DomainError);
    CHECK_THROWS_AS(slant_distance(1.0, -1.0), DomainError);
    for (double z = 0.0; z < 90.0; z += 7.5) CHECK(slant_distance(3.0, z) >= 3.0);
}

TEST_CASE("altitude order does not change distances") {
    Geometry a;
    Geometry b = a;
    std::swap(b.alt_h1_km, b.alt_h2_km);
    CHECK(a.distance_h1h2_km() == b.distance_h1h2_km());
    CHECK(a.distance_h1h2_km() == doctest::Approx(3.8637033051562732).epsilon(1e-14));
    CHECK(a.distance_h2g_km() == 20.0);
    Geometry bad;
    bad.alt_h2_km = bad.alt_h1_km;
    CHECK_THROWS_AS(bad.validate(), ParameterError);
    bad = {};
    bad.alt_g_km = -1.0;
    CHECK_THROWS_AS(bad.validate(), ParameterError);
}

TEST_CASE("free-space loss") {
    CHECK(free_space_loss_interhaps(2.9238044001630872, 17.7) == doctest::Approx(126.72599634452250).epsilon(1e-14));
    CHECK(free_space_loss_interhaps(1.0154266118857451, 17.7) == doctest::Approx(117.54000085803413).epsilon(1e-14));
    CHECK(free_space_loss_ground(20.0, 17.7) == doctest::Approx(143.43006524051576).epsilon(1e-14));
    CHECK(free_space_loss_ground(1.0, 1.0) == doctest::Approx(92.45));
    CHECK(free_space_loss_interhaps(2.0, 17.7) - free_space_loss_interhaps(1.0, 17.7)
          == doctest::Approx(20.0 * std::log10(2.0)).epsilon(1e-12));
    for (double d : {0.5, 3.0, 20.0})
        CHECK(std::abs(free_space_loss_interhaps(d, 17.7) - free_space_loss_ground(d, 17.7)) < 0.05);
    CHECK_THROWS_AS(free_space_loss_interhaps(0.0, 17.7), DomainError);
    CHECK_THROWS_AS(free_space_loss_ground(1.0, -1.0), DomainError);
}

TEST_CASE("rain attenuation") {
    CHECK(rain_attenuation({0.07, 1.08, 0.0, 5.0}) == 0.0);
    CHECK(rain_attenuation({1.0, 1.0, 2.0, 1.0}) == doctest::Approx(2.0));
    for (double k : {0.01, 0.07, 1.0})
        for (double a : {0.6, 1.08, 1.3}) {
            const double l2 = rain_attenuation({k, a, 2.0, 5.0});
            const double l10 = rain_attenuation({k, a, 10.0, 5.0});
            const double l50 = rain_attenuation({k, a, 50.0, 5.0});
            CHECK(l2 < l10);
            CHECK(l10 < l50);
        }
    CHECK_THROWS_AS(rain_attenuation({-0.1, 1.0, 2.0, 1.0}), ParameterError);
}

TEST_CASE("total path loss") {
    const auto z = total_path_loss(0, 0, 0, 0);
    CHECK(z.total_db == 0.0);
    CHECK(z.linear_gain() == 1.0);
    CHECK(total_path_loss(117.5, 0, 0.0216, 0).total_db == doctest::Approx(117.5216));
    const auto g = total_path_loss(143.43, 0, 0.0108, 5);
    CHECK(g.total_db == doctest::Approx(148.4408));
    CHECK(g.linear_gain() == doctest::Approx(std::pow(10.0, -14.84408)).epsilon(1e-12));
    CHECK_THROWS_AS(total_path_loss(-1, 0, 0, 0), ParameterError);
}

TEST_CASE("noise density") {
    CHECK(std::abs(noise_psd_db({-228.6, 22.3805, 76.02}) - (-130.1995)) < 1e-9);
    CHECK(noise_psd_db({-228.6, 0.0, 0.0}) == -228.6);
    NoiseParams n;
    const double base = noise_psd_db(n);
    n.bandwidth_dbhz += 3.0;
    CHECK(noise_psd_db(n) - base == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("harvested power for the three budget cases") {
    const AntennaGains gains;
    const auto loss = [](double zenith) {
        return total_path_loss(free_space_loss_interhaps(slant_distance(1.0, zenith), 17.7), 0.0, 0.0216, 0.0);
    };
    const double c1 = harvested_power_dbm({1.0, 0.5, 200.0}, gains, loss(70.0));
    const double c2 = harvested_power_dbm({1.0, 0.5, 20.0}, gains, loss(10.0));
    const double c3 = harvested_power_dbm({0.1, 0.5, 200.0}, gains, loss(10.0));
    CHECK(c1 == doctest::Approx(26.262703612117).epsilon(1e-12));
    CHECK(c2 == doctest::Approx(25.448699098606).epsilon(1e-12));
    CHECK(c3 == doctest::Approx(c2).epsilon(1e-14));
    CHECK(std::abs(c1 - 26.2) <= 0.5);
    CHECK(std::abs(c2 - 25.0) <= 1.0);
}

TEST_CASE("harvested power is additive in dB") {
    const AntennaGains gains;
    const auto loss = total_path_loss(120.0, 0.0, 0.0, 0.0);
    const double base = harvested_power_dbm({0.5, 0.5, 10.0}, gains, loss);
    CHECK(harvested_power_dbm({0.25, 0.5, 10.0}, gains, loss) - base == doctest::Approx(-10.0 * std::log10(2.0)));
    CHECK(harvested_power_dbm({0.5, 0.5, 40.0}, gains, loss) - base == doctest::Approx(10.0 * std::log10(4.0)));
    CHECK(harvested_power_dbm({0.5, 0.8, 10.0}, gains, loss) - base == doctest::Approx(10.0 * std::log10(4.0)));
}

TEST_CASE("required power") {
    CHECK(required_power_w({100.0, 40.0, 0.0}) == 140.0);
    CHECK(required_power_w({0.0, 0.0, 0.0}) == 0.0);
    CHECK(required_power_w({300.0, 120.0, 3.0}) == doctest::Approx(3.0 * required_power_w({100.0, 40.0, 1.0})));
}

TEST_CASE("average SNR in dB and linear paths agree") {
    const AntennaGains gains;
    const NoiseParams n;
    const auto l1 = total_path_loss(free_space_loss_interhaps(Geometry{}.distance_h1h2_km(), 17.7), 0.0, 0.0216, 0.0);
    const auto l2 = total_path_loss(free_space_loss_ground(20.0, 17.7), 0.0, 0.0108, 5.0);
    for (const EhTimeSwitchConfig cfg : {EhTimeSwitchConfig{1.0, 0.5, 200.0}, EhTimeSwitchConfig{0.2, 0.3, 17.0}}) {
        const double db = avg_snr_db(cfg, gains, l1, l2, n);
        CHECK(std::isfinite(db));
        CHECK(avg_snr_linear(cfg, gains, l1, l2, n) == doctest::Approx(db_to_linear(db)).epsilon(1e-12));
    }
    const double base = avg_snr_db({1.0, 0.5, 100.0}, gains, l1, l2, n);
    CHECK(avg_snr_db({1.0, 0.5, 200.0}, gains, l1, l2, n) - base == doctest::Approx(3.0103).epsilon(1e-5));
    auto more_loss = l2;
    more_loss.total_db += 1.0;
    CHECK(avg_snr_db({1.0, 0.5, 100.0}, gains, l1, more_loss, n) < base);
    AntennaGains more_gain = gains;
    more_gain.gr_g_dbi += 1.0;
    CHECK(avg_snr_db({1.0, 0.5, 100.0}, more_gain, l1, l2, n) > base);
}

TEST_CASE("configuration validation") {
    CHECK_THROWS_AS(EhTimeSwitchConfig({0.0, 0.5, 1.0}).validate(), ParameterError);
    CHECK_THROWS_AS(EhTimeSwitchConfig({1.1, 0.5, 1.0}).validate(), ParameterError);
    CHECK_THROWS_AS(EhTimeSwitchConfig({1.0, 1.0, 1.0}).validate(), ParameterError);
    CHECK_THROWS_AS(EhTimeSwitchConfig({1.0, 0.5, 0.0}).validate(), ParameterError);
    CHECK_THROWS_AS(AntennaGains({81.0, 0, 0, 0}).validate(), ParameterError);
    CHECK(EhTimeSwitchConfig{1.0, 0.5, 1.0}.slot_ratio_db() == 0.0);
}

}
