#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "tlab/chaoscrit.hpp"
#include "tlab/errors.hpp"
#include "tlab/params.hpp"
#include "tlab/rbm.hpp"

using namespace tlab;
using namespace tlab::rbm;

namespace {

// Integral of f over the real line via omega = w tan(u) and composite Simpson.
template <class F>
double line_integral(F f, double w, int n = 200000) {
    const double h = (kPi / 2) / n;
    double s = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double u = std::min(i * h, kPi / 2 - 1e-12);
        const double om = w * std::tan(u);
        const double jac = w / (std::cos(u) * std::cos(u));
        const double c = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
        s += c * f(om) * jac;
    }
    return 2.0 * s * h / 3.0;
}

double ks_uniform(std::vector<double> x, double lo, double hi) {
    std::sort(x.begin(), x.end());
    double d = 0.0;
    const double n = x.size();
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = (x[i] - lo) / (hi - lo);
        d = std::max({d, std::abs(f - i / n), std::abs((i + 1) / n - f)});
    }
    return d;
}

const double kD15 = chaos::diffusion_rate(0.47, 1.5);
const double kP15 = chaos::chaotic_layer_bound(0.47, 1.5).p_bar;

}  // namespace

TEST_SUITE("rbm") {

TEST_CASE("fold") {
    const double pb = 1.7;
    for (double r : {-1.7, -0.3, 0.0, 1.2, 1.7}) CHECK(fold(r, pb) == doctest::Approx(r));
    for (double d : {0.1, 1.0, 3.3}) CHECK(fold(pb + d, pb) == doctest::Approx(pb - d));
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-50, 50);
    for (int i = 0; i < 1000; ++i) {
        const double r = u(rng);
        CHECK(fold(r + 4 * pb, pb) == doctest::Approx(fold(r, pb)).epsilon(1e-12));
        CHECK(std::abs(fold(r, pb)) <= pb);
    }
}

TEST_CASE("vanishing diffusion keeps the start value") {
    const auto path = generate_path({1e-12, 2.0, kPeriod / 200, 4}, 50 * kPeriod, 0.7);
    for (double v : path.values) CHECK(std::abs(v - 0.7) < 1e-4);
    CHECK(path.times.size() == 10001);
    CHECK_THROWS_AS(generate_path({1.0, 2.0, 0.1, 4}, 1.0, 2.5), InvalidParameter);
}

TEST_CASE("paths are bounded and reproducible") {
    const RbmParams p{kD15, kP15, kPeriod / 200, 77};
    const auto a = generate_path(p, 100 * kPeriod, 0.0);
    const auto b = generate_path(p, 100 * kPeriod, 0.0);
    CHECK(a.values == b.values);
    for (double v : a.values) CHECK(std::abs(v) <= kP15);
}

TEST_CASE("stationary histogram is uniform") {
    // 1000 stationary paths over 1000 periods, sampled once per period.
    std::vector<double> x;
    x.reserve(1000000);
    for (std::uint64_t i = 0; i < 1000; ++i) {
        Rng rng = make_rng(123, i);
        const double p0 = kP15 * (2 * Normal::uniform(rng) - 1);
        PathStream s(kD15, kP15, kPeriod, p0, rng);
        for (int k = 0; k < 1000; ++k) x.push_back(s.next());
    }
    CHECK(ks_uniform(x, -kP15, kP15) < 0.02);
}

TEST_CASE("lag covariance matches the eigen-series") {
    const double a = base_rate(kD15, kP15);
    const double dt = 0.05 / a;
    const int n_paths = 20000;
    for (int lag_units : {0, 1, 3}) {
        const int steps = lag_units * 20;
        double s = 0, s2 = 0;
        for (int i = 0; i < n_paths; ++i) {
            Rng rng = make_rng(55 + lag_units, i);
            const double p0 = kP15 * (2 * Normal::uniform(rng) - 1);
            PathStream st(kD15, kP15, dt, p0, rng);
            double pt = st.value();
            for (int k = 0; k < steps; ++k) pt = st.next();
            s += p0 * pt, s2 += p0 * p0 * pt * pt;
        }
        const double mean = s / n_paths;
        const double se = std::sqrt((s2 / n_paths - mean * mean) / n_paths);
        CHECK(std::abs(mean - correlation(kD15, kP15, lag_units / a, 2001)) < 3 * se);
    }
}

TEST_CASE("path statistics relax to the invariant measure") {
    const double a = base_rate(kD15, kP15);
    const int n_paths = 20000;
    double s = 0, s2 = 0, pos = 0, neg = 0;
    for (int i = 0; i < n_paths; ++i) {
        PathStream st(kD15, kP15, 0.5 / a, 0.3, make_rng(8, i));
        for (int k = 0; k < 20; ++k) st.next();
        const double v = st.value();
        s += v, s2 += v * v;
    }
    const double mean = s / n_paths, var = s2 / n_paths - mean * mean;
    CHECK(std::abs(mean) < 3 * std::sqrt(var / n_paths));
    CHECK(var == doctest::Approx(kP15 * kP15 / 3).epsilon(0.02));

    // Covariance at +tau and -tau from one long stationary path.
    const auto path = generate_path({kD15, kP15, 0.25 / a, 9}, 4e5 / a, 0.0);
    const std::size_t lag = 4, n = path.values.size();
    for (std::size_t k = lag; k + lag < n; ++k) {
        pos += path.values[k] * path.values[k + lag];
        neg += path.values[k] * path.values[k - lag];
    }
    CHECK(pos / (n - 2 * lag) == doctest::Approx(neg / (n - 2 * lag)).epsilon(0.01));
}

TEST_CASE("correlation series") {
    const double pb = 1.3;
    CHECK(std::abs(correlation(0.1, pb, 0.0, 41) - pb * pb / 3) < 1e-6 * pb * pb);
    const double two = correlation(0.1, pb, 0.0, 3) / (pb * pb);
    CHECK(two == doctest::Approx(32 / std::pow(kPi, 4) * (1 + 1.0 / 81)).epsilon(1e-12));
    CHECK(std::round(two * 1e5) / 1e5 == doctest::Approx(0.33257).epsilon(1e-12));
    CHECK(correlation(0.1, pb, 1e6, 41) == doctest::Approx(0.0));
}

TEST_CASE("psd sum rule and symmetry") {
    for (auto [D, pb] : {std::pair{0.14727, 2.66}, std::pair{0.0884, 4.37}, std::pair{1.0, 1.0}}) {
        const double a = base_rate(D, pb);
        for (int terms : {3, 41}) {
            const double integral =
                line_integral([&](double w) { return psd(D, pb, w, terms); }, a) / (2 * kPi);
            CHECK(integral == doctest::Approx(correlation(D, pb, 0.0, terms)).epsilon(0.005));
        }
        for (double w : {0.0, 0.01, 0.7, 3.0}) CHECK(psd(D, pb, -w, 41) == psd(D, pb, w, 41));
    }
}

TEST_CASE("psd at zero frequency") {
    const double D = 0.3, pb = 2.0;
    const double a = kPi * kPi * D / (8 * pb * pb);
    double odd6 = 0;
    for (int n = 1; n < 20000; n += 2) odd6 += std::pow(double(n), -6);
    const double expect = 32 * pb * pb / std::pow(kPi, 4) * 2 / a * odd6;
    CHECK(psd(D, pb, 0.0, 19999) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(std::isfinite(psd(D, pb, 0.0, 3)));
}

TEST_CASE("two-term psd against the full series at zero frequency") {
    const double D = 0.0884, pb = 4.37;
    CHECK(psd(D, pb, 0.0, 3) == doctest::Approx(psd(D, pb, 0.0, 20001)).epsilon(0.05));
}

// Known to fail: the tail of the series is D/omega^2 (sum over 1/n^2), while
// two terms carry only 1 + 1/9 of pi^2/8 of it, a 10% shortfall for omega >> a.
TEST_CASE("two-term psd against the full series above the corner" * doctest::may_fail()) {
    const double D = 0.0884, pb = 4.37;
    const double a = base_rate(D, pb);
    for (double w : {a, 3 * a, 30 * a, 1 / std::sqrt(2.0)})
        CHECK(psd(D, pb, w, 3) == doctest::Approx(psd(D, pb, w, 20001)).epsilon(0.02));
}

TEST_CASE("printed closed forms versus the series") {
    const double D = chaos::diffusion_rate(0.47, 2.5);
    const double pb = chaos::chaotic_layer_bound(0.47, 2.5).p_bar;
    const double a = base_rate(D, pb);
    CHECK(psd_paper_two_term(D, pb, 1e3 * a) / psd(D, pb, 1e3 * a, 3) ==
          doctest::Approx((2 + 18.0) / (2 + 2.0 / 9)).epsilon(1e-3));
    const double w = 1 / std::sqrt(2.0);
    const double ratio = fgr_paper(0.01, w, D, pb) / fgr_rates(0.01, w, D, pb).gamma_down;
    CHECK(ratio > 10);
    // At zero frequency both printed forms exceed the series by (1 + 1/9)/(1 + 1/729).
    const double zero_ratio = (1 + 1.0 / 9) / (1 + 1.0 / 729);
    CHECK(fgr_paper(0.01, 0.0, D, pb) / fgr_rates(0.01, 0.0, D, pb).gamma_down ==
          doctest::Approx(zero_ratio).epsilon(1e-12));
    CHECK(psd_paper_two_term(D, pb, 0.0) / psd(D, pb, 0.0, 3) == doctest::Approx(zero_ratio).epsilon(1e-12));
}

TEST_CASE("FGR rates") {
    const auto z = fgr_rates(0.0, 0.7, 0.1, 2.0);
    CHECK(z.gamma_down == 0.0);
    CHECK(z.gamma_up == 0.0);
    const auto r = fgr_rates(0.01, 0.7, 0.1, 2.0);
    CHECK(r.gamma_down == r.gamma_up);
    CHECK(r.gamma_down == doctest::Approx(1e-4 * psd(0.1, 2.0, 0.7, 3)));
}

}
