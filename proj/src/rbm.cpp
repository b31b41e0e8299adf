#include "tlab/rbm.hpp"

#include <cmath>

#include "tlab/errors.hpp"
#include "tlab/params.hpp"

namespace tlab::rbm {

void validate(const RbmParams& p) {
    if (!(p.D > 0)) throw InvalidParameter("RBM diffusion rate must be positive");
    if (!(p.p_bar > 0)) throw InvalidParameter("RBM p_bar must be positive");
    if (!(p.dt > 0)) throw InvalidParameter("RBM dt must be positive");
}

double fold(double r, double p_bar) {
    const double w = 4.0 * p_bar;
    double m = std::fmod(r + p_bar, w);
    if (m < 0) m += w;
    return m <= 2.0 * p_bar ? m - p_bar : 3.0 * p_bar - m;
}

PathStream::PathStream(double D, double p_bar, double dt, double initial_p, Rng rng)
    : sigma_(std::sqrt(D * dt)), p_bar_(p_bar), r_(initial_p), rng_(rng) {}

double PathStream::next() {
    r_ += sigma_ * normal_(rng_);
    return value();
}

NoisePath generate_path(const RbmParams& params, double t_end, double initial_p) {
    validate(params);
    if (std::abs(initial_p) > params.p_bar) throw InvalidParameter("|initial_p| must be <= p_bar");
    if (!(t_end >= 0)) throw InvalidParameter("t_end must be non-negative");
    const auto n = static_cast<std::size_t>(std::llround(t_end / params.dt));
    NoisePath path;
    path.params = params;
    path.times.resize(n + 1);
    path.values.resize(n + 1);
    PathStream s(params.D, params.p_bar, params.dt, initial_p, make_rng(params.seed, 0));
    path.times[0] = 0.0;
    path.values[0] = s.value();
    for (std::size_t k = 1; k <= n; ++k) {
        path.times[k] = k * params.dt;
        path.values[k] = s.next();
    }
    return path;
}

double base_rate(double D, double p_bar) { return kPi * kPi * D / (8.0 * p_bar * p_bar); }

namespace {

double amplitude(double p_bar, int n) {
    const double n4 = double(n) * n * n * n;
    return 32.0 * p_bar * p_bar / (kPi * kPi * kPi * kPi * n4);
}

}  // namespace

double correlation(double D, double p_bar, double tau, int n_terms) {
    const double a = base_rate(D, p_bar);
    double c = 0.0;
    for (int n = 1; n <= n_terms; n += 2) c += amplitude(p_bar, n) * std::exp(-double(n) * n * a * std::abs(tau));
    return c;
}

double psd(double D, double p_bar, double omega, int n_terms) {
    const double a = base_rate(D, p_bar);
    double s = 0.0;
    for (int n = 1; n <= n_terms; n += 2) {
        const double an = double(n) * n * a;
        s += amplitude(p_bar, n) * 2.0 * an / (omega * omega + an * an);
    }
    return s;
}

double psd_paper_two_term(double D, double p_bar, double omega) {
    const double a = base_rate(D, p_bar);
    const double w2 = omega * omega;
    return 32.0 * p_bar * p_bar / std::pow(kPi, 4) *
           (2.0 * a / (w2 + a * a) + 18.0 * a / (w2 + 81.0 * a * a));
}

FgrRates fgr_rates(double g_t, double omega_q_t, double D, double p_bar) {
    const double g = g_t * g_t * psd(D, p_bar, omega_q_t, kFgrTerms);
    return {g, g};
}

double fgr_paper(double g_t, double omega_q_t, double D, double p_bar) {
    const double g2 = g_t * g_t, p4 = std::pow(p_bar, 4), w2 = omega_q_t * omega_q_t;
    const double pi4 = std::pow(kPi, 4);
    return 512.0 / (kPi * kPi) *
           (g2 * p4 * D / (w2 * p4 + pi4 * D * D) + g2 * p4 * D / (w2 * p4 / 9.0 + 9.0 * pi4 * D * D));
}

}  // namespace tlab::rbm
