#include "tlab/pendulum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tlab/errors.hpp"
#include "tlab/parallel.hpp"

namespace tlab::pendulum {

double PhasePoint::wrapped_theta() const {
    double w = std::fmod(theta, kPeriod);
    if (w < 0) w += kPeriod;
    return w;
}

Sampler fixed_sampler(PhasePoint p) {
    return [p](std::size_t, Rng&) { return p; };
}

Sampler list_sampler(std::vector<PhasePoint> points) {
    if (points.empty()) throw InvalidParameter("list_sampler needs at least one point");
    return [pts = std::move(points)](std::size_t i, Rng&) { return pts[i % pts.size()]; };
}

std::size_t steps_per_period(double dt) {
    if (!(dt > 0) || dt > kMaxDt * (1 + 1e-12))
        throw InvalidParameter("pendulum dt must be in (0, T/200]");
    const double n = kPeriod / dt;
    const double r = std::round(n);
    if (std::abs(n - r) > 1e-9 * n) throw InvalidParameter("pendulum dt must divide the period");
    return static_cast<std::size_t>(r);
}

double leapfrog_step(double lambda, double xi_d, PhasePoint& s, double dt) {
    const double shift = xi_d * std::sin(s.t + 0.5 * dt);
    s.p -= 0.5 * dt * lambda * std::sin(s.theta - shift);
    const double drift_p = s.p;
    s.theta += dt * s.p;
    s.p -= 0.5 * dt * lambda * std::sin(s.theta - shift);
    s.t += dt;
    return drift_p;
}

void advance(double lambda, double xi_d, PhasePoint& s, double dt, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const PhasePoint prev = s;
        leapfrog_step(lambda, xi_d, s, dt);
        if (!std::isfinite(s.theta) || !std::isfinite(s.p))
            throw IntegrationFailure("non-finite pendulum state", prev.t);
    }
}

std::vector<PhasePoint> integrate(double lambda, double xi_d, PhasePoint ic, double t_end,
                                  double dt) {
    if (!(dt > 0) || dt > kMaxDt * (1 + 1e-12)) throw InvalidParameter("dt must be in (0, T/200]");
    const double steps = (t_end - ic.t) / dt;
    const double n = std::round(steps);
    if (steps < -1e-9 || std::abs(steps - n) > 1e-9 * std::max(1.0, steps))
        throw InvalidParameter("t_end - t0 must be a non-negative multiple of dt");
    std::vector<PhasePoint> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    out.push_back(ic);
    PhasePoint s = ic;
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
        advance(lambda, xi_d, s, dt, 1);
        out.push_back(s);
    }
    return out;
}

std::vector<std::vector<PhasePoint>> poincare_section(double lambda, double xi_d,
                                                      const std::vector<PhasePoint>& ics,
                                                      std::size_t n_periods, double dt,
                                                      unsigned threads) {
    const std::size_t spp = steps_per_period(dt);
    std::vector<std::vector<PhasePoint>> out(ics.size());
    parallel_for(ics.size(), threads, [&](std::size_t i) {
        PhasePoint s = ics[i];
        auto& orbit = out[i];
        orbit.reserve(n_periods + 1);
        auto push = [&] {
            PhasePoint w = s;
            w.theta = s.wrapped_theta();
            orbit.push_back(w);
        };
        push();
        for (std::size_t n = 0; n < n_periods; ++n) {
            advance(lambda, xi_d, s, dt, spp);
            push();
        }
    });
    return out;
}

std::vector<PhasePoint> standard_map_iterate(double k, PhasePoint start, std::size_t n) {
    std::vector<PhasePoint> out;
    out.reserve(n + 1);
    out.push_back(start);
    PhasePoint s = start;
    for (std::size_t i = 0; i < n; ++i) {
        s.p -= k * std::sin(s.theta);
        s.theta += kPeriod * s.p;
        s.t += kPeriod;
        out.push_back(s);
    }
    return out;
}

std::vector<std::vector<double>> ensemble_momenta(double lambda, double xi_d,
                                                  const EnsembleSpec& ens,
                                                  std::size_t n_periods, double dt,
                                                  unsigned threads) {
    if (ens.n_traj < 1) throw InvalidParameter("n_traj must be >= 1");
    if (!ens.sampler) throw InvalidParameter("ensemble needs a sampler");
    const std::size_t spp = steps_per_period(dt);
    std::vector<std::vector<double>> out(ens.n_traj);
    parallel_for(ens.n_traj, threads, [&](std::size_t i) {
        Rng rng = make_rng(ens.seed, i);
        PhasePoint s = ens.sampler(i, rng);
        auto& row = out[i];
        row.resize(n_periods + 1);
        row[0] = s.p;
        for (std::size_t n = 1; n <= n_periods; ++n) {
            advance(lambda, xi_d, s, dt, spp);
            row[n] = s.p;
        }
    });
    return out;
}

namespace {

double sigma_bar_of(const std::vector<std::vector<double>>& m, std::size_t lo, std::size_t hi,
                    std::size_t first) {
    const std::size_t len = m.front().size();
    double acc = 0.0;
    for (std::size_t n = first; n < len; ++n) {
        double s = 0.0, s2 = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += m[i][n];
        const double mean = s / (hi - lo);
        for (std::size_t i = lo; i < hi; ++i) s2 += (m[i][n] - mean) * (m[i][n] - mean);
        acc += std::sqrt(s2 / (hi - lo));
    }
    return acc / (len - first);
}

}  // namespace

MomentumStats momentum_stats(const std::vector<std::vector<double>>& m) {
    if (m.empty()) throw InsufficientData("empty ensemble");
    const std::size_t len = m.front().size();
    const std::size_t n = m.size();
    MomentumStats st;
    st.t.resize(len);
    st.mean_p.resize(len);
    st.std_p.resize(len);
    for (std::size_t k = 0; k < len; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += m[i][k];
        const double mean = s / n;
        double s2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) s2 += (m[i][k] - mean) * (m[i][k] - mean);
        st.t[k] = kPeriod * k;
        st.mean_p[k] = mean;
        st.std_p[k] = std::sqrt(s2 / n);
    }
    // Final 50% of the window.
    const std::size_t first = len / 2;
    double acc = 0.0;
    for (std::size_t k = first; k < len; ++k) acc += st.std_p[k];
    st.sigma_bar = acc / (len - first);

    constexpr std::size_t kBatches = 20;
    if (n >= 2 * kBatches) {
        std::vector<double> b(kBatches);
        for (std::size_t j = 0; j < kBatches; ++j)
            b[j] = sigma_bar_of(m, j * n / kBatches, (j + 1) * n / kBatches, first);
        double mb = 0.0;
        for (double x : b) mb += x;
        mb /= kBatches;
        double v = 0.0;
        for (double x : b) v += (x - mb) * (x - mb);
        st.sigma_bar_stderr = std::sqrt(v / (kBatches - 1) / kBatches);
    }
    return st;
}

MomentumStats ensemble_momentum_stats(double lambda, double xi_d, const EnsembleSpec& ens,
                                      std::size_t n_periods, double dt, unsigned threads) {
    return momentum_stats(ensemble_momenta(lambda, xi_d, ens, n_periods, dt, threads));
}

Histogram histogram(const std::vector<double>& values, std::size_t bins, double lo, double hi) {
    if (bins < 1 || !(hi > lo)) throw InvalidParameter("histogram needs bins >= 1 and hi > lo");
    if (values.empty()) throw InsufficientData("histogram of no samples");
    Histogram h;
    h.edges.resize(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i) h.edges[i] = lo + (hi - lo) * i / bins;
    std::vector<std::size_t> counts(bins, 0);
    for (double v : values) {
        long k = static_cast<long>(std::floor((v - lo) / (hi - lo) * bins));
        k = std::clamp<long>(k, 0, static_cast<long>(bins) - 1);
        ++counts[k];
    }
    h.prob.resize(bins);
    for (std::size_t i = 0; i < bins; ++i) h.prob[i] = static_cast<double>(counts[i]) / values.size();
    return h;
}

Histogram momentum_histogram(double lambda, double xi_d, const EnsembleSpec& ens,
                             std::size_t snapshot_period, std::size_t bins, double lo, double hi,
                             double dt, unsigned threads) {
    const auto m = ensemble_momenta(lambda, xi_d, ens, snapshot_period, dt, threads);
    std::vector<double> v;
    v.reserve(m.size());
    for (const auto& row : m) v.push_back(row.back());
    return histogram(v, bins, lo, hi);
}

CrossingTrace resonance_crossing_trace(double lambda, double xi_d, PhasePoint ic,
                                       std::size_t n_periods, double dt,
                                       std::size_t record_stride) {
    const std::size_t spp = steps_per_period(dt);
    if (record_stride < 1) record_stride = 1;
    CrossingTrace out;
    PhasePoint s = ic;
    out.trajectory.push_back(s);
    double p_start = s.p;
    auto offset = [xi_d](const PhasePoint& q) { return q.p - xi_d * std::cos(q.t); };
    for (std::size_t n = 0; n < n_periods; ++n) {
        for (std::size_t k = 0; k < spp; ++k) {
            const PhasePoint prev = s;
            advance(lambda, xi_d, s, dt, 1);
            if (xi_d > 0) {
                const double a = offset(prev), b = offset(s);
                if ((a < 0 && b >= 0) || (a > 0 && b <= 0)) {
                    const double w = a / (a - b);
                    out.crossings.push_back({n, prev.t + w * dt, prev.p + w * (s.p - prev.p)});
                }
            }
            if ((n * spp + k + 1) % record_stride == 0) out.trajectory.push_back(s);
        }
        out.period_jumps.push_back(s.p - p_start);
        p_start = s.p;
    }
    return out;
}

ConvergenceReport convergence_check(double lambda, double xi_d, const EnsembleSpec& ens,
                                    double dt, std::size_t horizon_periods, double tolerance,
                                    unsigned threads) {
    ConvergenceReport r;
    r.subsample = std::min<std::size_t>(
        ens.n_traj, std::max<std::size_t>(10, (ens.n_traj + 99) / 100));
    r.horizon_periods = horizon_periods;
    r.tolerance = tolerance;
    EnsembleSpec sub = ens;
    sub.n_traj = r.subsample;
    const auto a = momentum_stats(ensemble_momenta(lambda, xi_d, sub, horizon_periods, dt, threads));
    const auto b =
        momentum_stats(ensemble_momenta(lambda, xi_d, sub, horizon_periods, dt / 2, threads));
    for (std::size_t k = 0; k < a.t.size(); ++k) {
        r.max_mean_diff = std::max(r.max_mean_diff, std::abs(a.mean_p[k] - b.mean_p[k]));
        r.max_std_diff = std::max(r.max_std_diff, std::abs(a.std_p[k] - b.std_p[k]));
    }
    r.passed = r.max_mean_diff <= tolerance && r.max_std_diff <= tolerance;
    return r;
}

}  // namespace tlab::pendulum
