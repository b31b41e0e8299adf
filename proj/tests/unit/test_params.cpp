#include <doctest.h>

#include <cmath>
#include <random>

#include "tlab/errors.hpp"
#include "tlab/params.hpp"

using namespace tlab;

TEST_SUITE("params") {

TEST_CASE("plasma frequency of the reference circuit") {
    CircuitParams c;
    c.E_J = 29.37;
    c.E_C = 0.2;
    CHECK(plasma_frequency_ghz(c) == doctest::Approx(6.85).epsilon(1e-3));
}

TEST_CASE("reference drive gives lambda 0.47 and hbar_eff 0.16") {
    CircuitParams c;
    c.E_J = 29.37;
    c.E_C = 0.2;
    c.omega_d = 2 * kPi * 6.85e9 / std::sqrt(0.47);
    const ModelParams m = rescale(c);
    CHECK(m.lambda == doctest::Approx(0.47).epsilon(2e-3));
    CHECK(m.hbar_eff == doctest::Approx(0.160).epsilon(2e-3));
}

TEST_CASE("coupling of 16 MHz maps to g_t 0.01") {
    CircuitParams c;
    c.E_J = 29.37;
    c.E_C = 0.2;
    c.omega_d = 2 * kPi * 9.99e9;
    c.g = 2 * kPi * 16e6;
    CHECK(rescale(c).g_t == doctest::Approx(0.01).epsilon(1e-12));
}

TEST_CASE("zero drive amplitude") {
    CircuitParams c{29.37, 0.2, 0.0, 2 * kPi * 9.99e9, 0.0, 0.0, 0.0};
    CHECK(rescale(c).xi_d == 0.0);
}

TEST_CASE("non-positive drive frequency is rejected") {
    CircuitParams c{29.37, 0.2, 0.0, 0.0, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(rescale(c), InvalidParameter);
    c.omega_d = -1.0;
    CHECK_THROWS_AS(rescale(c), InvalidParameter);
}

TEST_CASE("bound state count") {
    ModelParams m;
    m.lambda = 0.47;
    m.hbar_eff = 0.16;
    CHECK(bound_state_count(m) == doctest::Approx(8.57).epsilon(1e-3));
    m.lambda = 0.25;
    m.hbar_eff = 1.0;
    CHECK(bound_state_count(m) == doctest::Approx(1.0));
    m.lambda = 0.47;
    m.hbar_eff = 0.08;
    CHECK(bound_state_count(m) == doctest::Approx(2 * 8.5695).epsilon(1e-4));
}

TEST_CASE("offset charge is stored modulo one") {
    CHECK(wrap_offset_charge(1.25) == doctest::Approx(0.25));
    CHECK(wrap_offset_charge(-0.25) == doctest::Approx(0.75));
    CHECK(wrap_offset_charge(0.0) == 0.0);
}

TEST_CASE("property: round trip through circuit parameters") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.05, 3.0);
    for (int i = 0; i < 200; ++i) {
        ModelParams m;
        m.lambda = u(rng);
        m.xi_d = u(rng) * 2;
        m.hbar_eff = u(rng) / 3;
        m.omega_q_t = u(rng);
        m.g_t = u(rng) / 100;
        m.n_g = u(rng) / 3.1;
        const double E_C = u(rng);
        const ModelParams r = rescale(to_circuit(m, E_C));
        CHECK(std::abs(r.lambda / m.lambda - 1) < 1e-12);
        CHECK(std::abs(r.xi_d / m.xi_d - 1) < 1e-12);
        CHECK(std::abs(r.hbar_eff / m.hbar_eff - 1) < 1e-12);
        CHECK(std::abs(r.omega_q_t / m.omega_q_t - 1) < 1e-12);
        CHECK(std::abs(r.g_t / m.g_t - 1) < 1e-12);
        CHECK(std::abs(r.n_g - m.n_g) < 1e-12);
    }
}

TEST_CASE("property: common rescaling of all scales") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    for (int i = 0; i < 100; ++i) {
        CircuitParams c{u(rng) * 5, u(rng) / 10, u(rng) * 1e9, u(rng) * 1e10, u(rng) * 1e10,
                        u(rng) * 1e7, 0.3};
        const double s = u(rng);
        CircuitParams d = c;
        d.E_J *= s;
        d.E_C *= s;
        d.eps_d *= s;
        d.omega_d *= s;
        d.omega_q *= s;
        d.g *= s;
        const ModelParams a = rescale(c), b = rescale(d);
        CHECK(b.lambda == doctest::Approx(a.lambda).epsilon(1e-12));
        CHECK(b.hbar_eff == doctest::Approx(a.hbar_eff).epsilon(1e-12));
        CHECK(b.xi_d == doctest::Approx(a.xi_d).epsilon(1e-12));
        CHECK(b.omega_q_t == doctest::Approx(a.omega_q_t).epsilon(1e-12));
        CHECK(b.g_t == doctest::Approx(a.g_t).epsilon(1e-12));
    }
}

}
