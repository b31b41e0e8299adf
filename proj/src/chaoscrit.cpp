#include "tlab/chaoscrit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tlab/errors.hpp"
#include "tlab/params.hpp"

namespace tlab::chaos {

namespace {

// Miller's downward recurrence normalized with J_0 + 2 sum_k J_2k = 1.
// Returns J_0..J_mmax.
std::vector<double> bessel_row(int m_max, double x) {
    std::vector<double> out(static_cast<std::size_t>(m_max) + 1, 0.0);
    if (x == 0.0) {
        out[0] = 1.0;
        return out;
    }
    const int top = std::max(m_max, static_cast<int>(x));
    int start = top + 20 + static_cast<int>(std::sqrt(40.0 * (top + 1)));
    if (start % 2) ++start;

    std::vector<double> j(static_cast<std::size_t>(start) + 2, 0.0);
    j[start + 1] = 0.0;
    j[start] = 1e-300;
    double norm = 0.0;
    for (int k = start; k >= 1; --k) {
        j[k - 1] = 2.0 * k / x * j[k] - j[k + 1];
        if (std::abs(j[k - 1]) > 1e250) {
            for (int i = k - 1; i <= start + 1; ++i) j[i] *= 1e-250;
            norm *= 1e-250;
        }
        if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * j[k - 1];
    }
    norm += j[0];
    for (int m = 0; m <= m_max; ++m) out[m] = j[m] / norm;
    return out;
}

void check_envelope(int m, double x) {
    if (m < 0 || m > 200 || !(x >= 0.0) || x > 1000.0)
        throw RangeError("bessel_j outside 0<=m<=200, 0<=x<=1000: m=" + std::to_string(m) +
                         " x=" + std::to_string(x));
}

template <class F>
double bisect(F f, double lo, double hi, double tol) {
    double flo = f(lo);
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double bessel_j(int m, double x) {
    check_envelope(m, x);
    return bessel_row(m, x)[m];
}

double bessel_j1_argmax() {
    static const double x = [] {
        auto dj1 = [](double t) {
            auto r = bessel_row(1, t);
            return r[0] - r[1] / t;
        };
        return bisect(dj1, 1.5, 2.2, 1e-14);
    }();
    return x;
}

std::vector<ResonanceCurve> resonance_curves(double lambda, double xi_d, int m_max,
                                             HalfPlane side) {
    if (!(lambda > 0)) throw InvalidParameter("lambda must be positive");
    if (!(xi_d >= 0)) throw InvalidParameter("xi_d must be non-negative");
    if (m_max < 0) throw InvalidParameter("m_max must be non-negative");
    check_envelope(m_max, xi_d);
    const auto row = bessel_row(m_max, xi_d);
    const double sign = side == HalfPlane::upper ? 1.0 : -1.0;
    std::vector<ResonanceCurve> out;
    out.reserve(row.size());
    for (int m = 0; m <= m_max; ++m) {
        const double half = 2.0 * std::sqrt(lambda * std::abs(row[m]));
        ResonanceCurve c;
        c.m = static_cast<int>(sign) * m;
        c.width = 2.0 * half;
        c.upper_at_zero = sign * m + half;
        c.lower_at_zero = sign * m - half;
        out.push_back(c);
    }
    return out;
}

ChaoticLayer chaotic_layer_bound(double lambda, double xi_d, int m_max, HalfPlane side) {
    if (!(lambda > 0)) throw InvalidParameter("lambda must be positive");
    if (!(xi_d >= 0)) throw InvalidParameter("xi_d must be non-negative");
    ChaoticLayer layer;
    if (xi_d == 0.0) return layer;
    if (m_max <= 0) m_max = std::min(200, 2 * static_cast<int>(std::ceil(xi_d)) + 20);
    const auto row = bessel_row(m_max, xi_d);
    auto half = [&](int m) { return 2.0 * std::sqrt(lambda * std::abs(row[m])); };

    int m = 0;
    for (; m < m_max; ++m) {
        const bool wide = std::abs(row[m]) >= kWidthEpsilon && std::abs(row[m + 1]) >= kWidthEpsilon;
        const double gap = (m + half(m)) - (m + 1 - half(m + 1));
        const bool tangent = std::abs(gap) < kTangentTolerance;
        const bool overlap = wide && gap > 0 && !tangent;
        layer.overlaps.push_back(overlap);
        if (!overlap) {
            layer.near_tangent = wide && tangent;
            break;
        }
    }
    if (m == m_max) throw RangeError("overlap scan did not terminate below m_max");
    if (m == 0) return layer;
    layer.m_bar = m;
    layer.p_bar = m + half(m);
    if (side == HalfPlane::lower) {
        layer.p_bar = -layer.p_bar;
        layer.m_bar = -m;
    }
    return layer;
}

double threshold_lower_residual(double lambda, double x) {
    return 1.0 - 2.0 * std::sqrt(lambda * std::abs(bessel_j(1, x)));
}

double threshold_upper_residual(double lambda, double x) {
    const auto r = bessel_row(1, x);
    return 1.0 - 2.0 * std::sqrt(lambda * std::abs(r[1])) - 2.0 * std::sqrt(lambda * std::abs(r[0]));
}

std::optional<double> threshold_lower(double lambda) {
    if (!(lambda > 0)) return std::nullopt;
    const double xm = bessel_j1_argmax();
    auto f = [lambda](double x) { return threshold_lower_residual(lambda, x); };
    const double fm = f(xm);
    if (std::abs(fm) <= 1e-12) return xm;
    if (fm > 0) return std::nullopt;
    // The residual decreases monotonically on [1e-3, argmax].
    return bisect(f, 1e-3, xm, 1e-6);
}

std::optional<double> threshold_upper(double lambda) {
    if (!(lambda > 0)) return std::nullopt;
    auto f = [lambda](double x) { return threshold_upper_residual(lambda, x); };
    constexpr double lo = 1e-3, hi = 20.0, step = 1e-3;
    double x0 = lo;
    double f0 = f(x0);
    std::optional<double> rise;
    for (int i = 1;; ++i) {
        const double x1 = std::min(hi, lo + i * step);
        const double f1 = f(x1);
        if (f0 <= 0 && f1 > 0) {
            rise = bisect(f, x0, x1, 1e-6);
        } else if (f0 > 0 && f1 <= 0 && rise) {
            const double fall = bisect(f, x0, x1, 1e-6);
            if (fall - *rise >= kUpperMinWindow) return rise;
            rise.reset();
        }
        if (x1 >= hi) break;
        x0 = x1;
        f0 = f1;
    }
    return rise;
}

double diffusion_rate(double lambda, double xi_d) {
    if (!(xi_d > 0)) throw InvalidParameter("diffusion_rate needs xi_d > 0");
    return lambda * lambda / xi_d;
}

StandardMapK standard_map_k(double lambda, double xi_d) {
    if (!(xi_d > 0)) throw InvalidParameter("standard_map_k needs xi_d > 0");
    StandardMapK s;
    s.k = 2.0 * std::sqrt(kPi) * lambda / std::sqrt(xi_d);
    s.kT = s.k * kPeriod;
    s.chaotic = s.kT > kChirikovCritical;
    return s;
}

double localization_length(double D, double hbar_eff) {
    if (!(hbar_eff > 0)) throw InvalidParameter("hbar_eff must be positive");
    return kPeriod * D / (hbar_eff * hbar_eff);
}

double sigma_star_classical(double p_bar) { return p_bar / std::sqrt(3.0); }

double sigma_star_quantum(double hbar_eff, double l_n) { return hbar_eff * l_n / std::sqrt(2.0); }

double localization_threshold(double lambda, double hbar_eff) {
    if (!(hbar_eff > 0)) throw InvalidParameter("hbar_eff must be positive");
    return std::sqrt(std::sqrt(6.0) * kPi * lambda * lambda / hbar_eff);
}

}  // namespace tlab::chaos
