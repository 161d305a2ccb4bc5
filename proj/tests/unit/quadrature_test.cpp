#include "hapseh/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace hapseh;

TEST_SUITE("quadrature") {

TEST_CASE("polynomials up to degree 22 are exact on a single panel") {
    const auto r = quad::integrate([](double x) { return std::pow(x, 22); }, 0.0, 1.0, 1e-300, 1e-15, 1);
    CHECK(r.value == doctest::Approx(1.0 / 23.0).epsilon(1e-15));
    CHECK(r.intervals == 1);
}

TEST_CASE("smooth and peaked integrands") {
    const auto e = quad::integrate([](double x) { return std::exp(-x); }, 0.0, 40.0, 1e-15, 1e-13, 1000);
    CHECK(e.converged);
    CHECK(e.value == doctest::Approx(1.0 - std::exp(-40.0)).epsilon(1e-14));

    const auto s = quad::integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-14, 1e-12, 1000);
    CHECK(s.converged);
    CHECK(s.value == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    const auto p = quad::integrate([](double x) { return 1e-4 / (x * x + 1e-8); }, -1.0, 1.0, 1e-12, 1e-12, 5000);
    CHECK(p.converged);
    CHECK(p.value == doctest::Approx(2.0 * std::atan(1e4)).epsilon(1e-11));
}

TEST_CASE("tiny intervals converge instead of exhausting the budget") {
    // A short interval must be judged on its own scale.
    const auto r = quad::integrate([](double x) { return std::exp(-x); }, 0.0, 2.4e-5, 1e-14, 1e-11, 64);
    CHECK(r.converged);
    CHECK(r.intervals == 1);
    CHECK(r.value == doctest::Approx(-std::expm1(-2.4e-5)).epsilon(1e-15));
}

TEST_CASE("error estimate bounds the true error and non-convergence is reported") {
    auto f = [](double x) { return std::sin(50.0 * x) * std::sin(50.0 * x); };
    const double exact = 0.5 * std::numbers::pi - std::sin(100.0 * std::numbers::pi) / 200.0;
    const auto ok = quad::integrate(f, 0.0, std::numbers::pi, 1e-13, 1e-12, 2000);
    CHECK(ok.converged);
    CHECK(std::abs(ok.value - exact) <= ok.error);

    const auto starved = quad::integrate(f, 0.0, std::numbers::pi, 1e-15, 1e-15, 2);
    CHECK_FALSE(starved.converged);
    CHECK(starved.intervals == 2);
}

TEST_CASE("empty interval") {
    const auto r = quad::integrate([](double) { return 1.0; }, 3.0, 3.0, 1e-12, 1e-12, 10);
    CHECK(r.converged);
    CHECK(r.value == 0.0);
}

}
