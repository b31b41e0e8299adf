#include <doctest.h>

#include <cmath>
#include <random>

#include "tlab/chaoscrit.hpp"
#include "tlab/errors.hpp"

using namespace tlab;
using namespace tlab::chaos;

namespace {

// Ascending series for J_m with a fixed number of terms.
double series_j(int m, double x, int terms = 30) {
    double sum = 0.0;
    for (int k = 0; k < terms; ++k) {
        double term = std::pow(x / 2, 2 * k + m) / (std::tgamma(k + 1.0) * std::tgamma(k + m + 1.0));
        sum += (k % 2 ? -term : term);
    }
    return sum;
}

}  // namespace

TEST_SUITE("chaoscrit") {

TEST_CASE("bessel_j special values and series oracle") {
    CHECK(bessel_j(0, 0.0) == 1.0);
    CHECK(bessel_j(1, 0.0) == 0.0);
    CHECK(std::abs(bessel_j(1, 1.5) - series_j(1, 1.5)) < 1e-10);
    for (double x : {0.3, 2.0, 4.5, 7.0})
        for (int m : {0, 1, 2, 5, 9}) CHECK(std::abs(bessel_j(m, x) - series_j(m, x, 60)) < 1e-10);
}

TEST_CASE("bessel_j against the standard library on the validity envelope") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> um(0, 200);
    std::uniform_real_distribution<double> ux(0.0, 1000.0);
    for (int i = 0; i < 300; ++i) {
        const int m = um(rng);
        const double x = i < 100 ? ux(rng) / 100 : ux(rng);
        CHECK(std::abs(bessel_j(m, x) - std::cyl_bessel_j(double(m), x)) < 1e-10);
    }
}

TEST_CASE("bessel_j rejects arguments outside the envelope") {
    CHECK_THROWS_AS(bessel_j(201, 1.0), RangeError);
    CHECK_THROWS_AS(bessel_j(-1, 1.0), RangeError);
    CHECK_THROWS_AS(bessel_j(2, 1000.5), RangeError);
    CHECK_THROWS_AS(bessel_j(2, -0.1), RangeError);
}

TEST_CASE("property: three-term recurrence") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> um(1, 199);
    std::uniform_real_distribution<double> ux(0.01, 200.0);
    for (int i = 0; i < 500; ++i) {
        const int m = um(rng);
        const double x = ux(rng);
        const double lhs = bessel_j(m - 1, x) + bessel_j(m + 1, x);
        CHECK(std::abs(lhs - 2.0 * m / x * bessel_j(m, x)) < 1e-8);
    }
}

TEST_CASE("resonance widths") {
    auto r = resonance_curves(0.47, 0.0, 3);
    CHECK(r[0].width == doctest::Approx(4 * std::sqrt(0.47)));
    CHECK(r[0].width == doctest::Approx(2.742).epsilon(1e-3));
    CHECK(r[2].width == 0.0);

    auto z = resonance_curves(0.47, 2.404825557695773, 2);
    CHECK(z[0].width < 1e-6);

    auto s = resonance_curves(0.47, 1.5, 2);
    CHECK(s[1].width == doctest::Approx(4 * std::sqrt(0.47 * std::abs(series_j(1, 1.5)))).epsilon(1e-10));
    for (const auto& c : s) CHECK(c.upper_at_zero - c.lower_at_zero == doctest::Approx(c.width));
}

TEST_CASE("chaotic layer bound") {
    const auto l = chaotic_layer_bound(0.47, 1.5);
    REQUIRE(l.m_bar);
    CHECK(l.p_bar > 2.0);
    CHECK(l.p_bar < 4.0);
    CHECK(l.p_bar == doctest::Approx(*l.m_bar + 2 * std::sqrt(0.47 * std::abs(series_j(*l.m_bar, 1.5, 60)))));

    CHECK(chaotic_layer_bound(0.47, 0.0).p_bar == 0.0);
    CHECK_FALSE(chaotic_layer_bound(0.47, 0.0).m_bar);
}

TEST_CASE("scan stability under a larger m_max") {
    for (double xi : {1.5, 2.0, 2.5, 3.3, 4.5, 6.0}) {
        const auto a = chaotic_layer_bound(0.47, xi);
        const auto b = chaotic_layer_bound(0.47, xi, 2 * (2 * int(std::ceil(xi)) + 20));
        CHECK(a.p_bar == b.p_bar);
    }
}

TEST_CASE("property: lower half-plane mirrors the upper scan") {
    for (double xi = 0.2; xi < 8.0; xi += 0.37) {
        const auto up = chaotic_layer_bound(0.47, xi);
        const auto lo = chaotic_layer_bound(0.47, xi, 0, HalfPlane::lower);
        CHECK(lo.p_bar == doctest::Approx(-up.p_bar));
    }
}

TEST_CASE("property: window-averaged layer bound grows with drive") {
    const double start = *threshold_lower(0.47);
    double prev = -1.0;
    for (double w = start; w + 1.0 <= 6.0 + 1e-9; w += 1.0) {
        double sum = 0.0;
        const int n = 200;
        for (int i = 0; i < n; ++i) sum += chaotic_layer_bound(0.47, w + (i + 0.5) / n).p_bar;
        const double avg = sum / n;
        CHECK(avg >= prev);
        prev = avg;
    }
}

TEST_CASE("lower threshold") {
    const auto x = threshold_lower(0.47);
    REQUIRE(x);
    CHECK(*x == doctest::Approx(1.34).epsilon(0.01 / 1.34));

    // Tangency: choose lambda so that the curve just touches zero at the
    // maximum of J_1, located here by a brute-force scan of the series.
    double xm = 0.0, jm = 0.0;
    for (double t = 1.7; t < 2.0; t += 1e-6) {
        const double v = series_j(1, t, 40);
        if (v > jm) jm = v, xm = t;
    }
    const auto xt = threshold_lower(0.25 / jm);
    REQUIRE(xt);
    CHECK(*xt == doctest::Approx(xm).epsilon(1e-5));
    CHECK(*xt == doctest::Approx(1.841).epsilon(1e-3));

    CHECK_FALSE(threshold_lower(1e-3));
}

TEST_CASE("upper threshold") {
    const auto x = threshold_upper(0.47);
    REQUIRE(x);
    CHECK(std::abs(*x - 3.8) <= 0.05);
    CHECK(threshold_upper_residual(0.47, *x - 1e-5) < 0);
    CHECK(threshold_upper_residual(0.47, *x + 1e-5) > 0);
    CHECK(*x > *threshold_lower(0.47));
}

TEST_CASE("diffusion rate and standard map strength") {
    CHECK(diffusion_rate(0.47, 1.5) == doctest::Approx(0.14727).epsilon(1e-4));
    CHECK(diffusion_rate(0.47, 4.5) == doctest::Approx(0.049089).epsilon(1e-4));
    CHECK(diffusion_rate(1, 1) == 1.0);
    CHECK_THROWS_AS(diffusion_rate(0.47, 0.0), InvalidParameter);

    const auto k = standard_map_k(0.47, 1.5);
    CHECK(k.k == doctest::Approx(1.3604).epsilon(1e-4));
    CHECK(k.kT == doctest::Approx(8.55).epsilon(1e-3));
    CHECK(k.chaotic);
    CHECK(standard_map_k(0.0, 1.5).k == 0.0);
    CHECK_FALSE(standard_map_k(0.0, 1.5).chaotic);
    for (double xi : {0.5, 1.5, 4.5}) {
        const double kk = standard_map_k(0.47, xi).k;
        CHECK(kk * kk / (2 * 2 * M_PI) == doctest::Approx(diffusion_rate(0.47, xi)).epsilon(1e-12));
    }
}

TEST_CASE("localization length and fluctuation laws") {
    CHECK(localization_length(0.049089, 0.16) == doctest::Approx(12.05).epsilon(1e-3));
    CHECK(localization_length(0.0, 0.16) == 0.0);
    CHECK(localization_length(0.1, 0.32) == doctest::Approx(localization_length(0.1, 0.16) / 4));

    CHECK(localization_threshold(0.47, 0.16) == doctest::Approx(3.26).epsilon(0.01 / 3.26));
    CHECK(sigma_star_classical(std::sqrt(3.0)) == doctest::Approx(1.0));

    const double xs = localization_threshold(0.47, 0.16);
    const double lq = localization_length(diffusion_rate(0.47, xs), 0.16);
    CHECK(std::abs(sigma_star_classical(xs) - sigma_star_quantum(0.16, lq)) < 1e-9);
}

}
