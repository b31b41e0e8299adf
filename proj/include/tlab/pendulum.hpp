#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "tlab/params.hpp"
#include "tlab/seeding.hpp"

namespace tlab::pendulum {

struct PhasePoint {
    double theta = 0.0;  // unwrapped
    double p = 0.0;
    double t = 0.0;

    double wrapped_theta() const;
};

inline constexpr double kDefaultDt = kPeriod / 1000.0;
inline constexpr double kMaxDt = kPeriod / 200.0;

// Initial-condition sampler for trajectory `index`; `rng` is the stream
// derived from (ensemble seed, index).
using Sampler = std::function<PhasePoint(std::size_t index, Rng& rng)>;

struct EnsembleSpec {
    std::size_t n_traj = 1;
    std::uint64_t seed = 0;
    Sampler sampler;
};

Sampler fixed_sampler(PhasePoint p);
Sampler list_sampler(std::vector<PhasePoint> points);

// One Strang step (half kick, drift, half kick) with the kick evaluated at
// the midpoint time. Returns the momentum held during the drift, which is
// the exact time average of p over the step.
double leapfrog_step(double lambda, double xi_d, PhasePoint& s, double dt);

// Advances n steps of size dt; throws IntegrationFailure on a non-finite state.
void advance(double lambda, double xi_d, PhasePoint& s, double dt, std::size_t n);

std::vector<PhasePoint> integrate(double lambda, double xi_d, PhasePoint ic, double t_end,
                                  double dt = kDefaultDt);

// Stroboscopic samples at ic.t + nT, n = 0..n_periods, theta wrapped.
std::vector<std::vector<PhasePoint>> poincare_section(double lambda, double xi_d,
                                                      const std::vector<PhasePoint>& ics,
                                                      std::size_t n_periods,
                                                      double dt = kDefaultDt,
                                                      unsigned threads = 1);

// Chirikov map: p' = p - k sin(theta), theta' = theta + T p'. Returns n+1 points.
std::vector<PhasePoint> standard_map_iterate(double k, PhasePoint start, std::size_t n);

// Stroboscopic momenta p(nT), n = 0..n_periods, for every ensemble member.
std::vector<std::vector<double>> ensemble_momenta(double lambda, double xi_d,
                                                  const EnsembleSpec& ens,
                                                  std::size_t n_periods,
                                                  double dt = kDefaultDt,
                                                  unsigned threads = 1);

struct MomentumStats {
    std::vector<double> t;
    std::vector<double> mean_p;
    std::vector<double> std_p;
    double sigma_bar = 0.0;
    // Standard error of sigma_bar from 20 index-ordered batches.
    double sigma_bar_stderr = 0.0;
};

MomentumStats momentum_stats(const std::vector<std::vector<double>>& momenta);
MomentumStats ensemble_momentum_stats(double lambda, double xi_d, const EnsembleSpec& ens,
                                      std::size_t n_periods, double dt = kDefaultDt,
                                      unsigned threads = 1);

struct Histogram {
    std::vector<double> edges;  // bins + 1
    std::vector<double> prob;   // sums to 1
};

// Probability histogram on [lo, hi]; values outside are counted in the
// end bins so the total mass is preserved.
Histogram histogram(const std::vector<double>& values, std::size_t bins, double lo, double hi);

Histogram momentum_histogram(double lambda, double xi_d, const EnsembleSpec& ens,
                             std::size_t snapshot_period, std::size_t bins, double lo, double hi,
                             double dt = kDefaultDt, unsigned threads = 1);

struct Crossing {
    std::size_t period = 0;
    double t = 0.0;
    double p = 0.0;
};

struct CrossingTrace {
    std::vector<PhasePoint> trajectory;
    std::vector<Crossing> crossings;
    // p((n+1)T) - p(nT)
    std::vector<double> period_jumps;
};

// Records every `record_stride` steps; crossings are sign changes of
// p - xi_d cos t, located by linear interpolation.
CrossingTrace resonance_crossing_trace(double lambda, double xi_d, PhasePoint ic,
                                       std::size_t n_periods, double dt = kDefaultDt,
                                       std::size_t record_stride = 1);

struct ConvergenceReport {
    std::size_t subsample = 0;
    std::size_t horizon_periods = 0;
    double max_mean_diff = 0.0;
    double max_std_diff = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

// Re-runs ceil(1%) of the ensemble (at least 10 members) at dt and dt/2
// over a short horizon and compares stroboscopic mean and std of p.
ConvergenceReport convergence_check(double lambda, double xi_d, const EnsembleSpec& ens,
                                    double dt = kDefaultDt, std::size_t horizon_periods = 2,
                                    double tolerance = 1e-4, unsigned threads = 1);

std::size_t steps_per_period(double dt);

}  // namespace tlab::pendulum
