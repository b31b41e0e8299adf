#pragma once

#include <cstdint>
#include <vector>

#include "tlab/seeding.hpp"

namespace tlab::rbm {

struct RbmParams {
    double D = 0.0;
    double p_bar = 0.0;
    double dt = 0.0;
    std::uint64_t seed = 0;
};

void validate(const RbmParams& p);

struct NoisePath {
    std::vector<double> times;
    std::vector<double> values;
    RbmParams params;
};

// Folds the real line onto [-p_bar, p_bar] with reflecting walls.
double fold(double r, double p_bar);

// Unfolded Gaussian walk from r0 = initial_p, folded on output. Samples at
// k*dt for k = 0..round(t_end/dt).
NoisePath generate_path(const RbmParams& params, double t_end, double initial_p);

// Same process, one sample at a time, for ensembles that do not keep paths.
class PathStream {
public:
    PathStream(double D, double p_bar, double dt, double initial_p, Rng rng);
    double value() const { return fold(r_, p_bar_); }
    double next();

private:
    double sigma_;
    double p_bar_;
    double r_;
    Rng rng_;
    Normal normal_;
};

// Decay constant of the slowest mode, pi^2 D / (8 p_bar^2).
double base_rate(double D, double p_bar);

// Stationary autocorrelation from the odd-mode eigen-series, n <= n_terms.
double correlation(double D, double p_bar, double tau, int n_terms);

// Fourier transform of correlation(); even in omega.
double psd(double D, double p_bar, double omega, int n_terms);

// Two-term closed form exactly as printed in the source derivation,
// including its coefficient on the n = 3 term.
double psd_paper_two_term(double D, double p_bar, double omega);

struct FgrRates {
    double gamma_down = 0.0;
    double gamma_up = 0.0;
};

inline constexpr int kFgrTerms = 3;

FgrRates fgr_rates(double g_t, double omega_q_t, double D, double p_bar);

// Printed closed-form rate, kept for comparison.
double fgr_paper(double g_t, double omega_q_t, double D, double p_bar);

}  // namespace tlab::rbm
