#include <algorithm>
#include <cmath>
#include <memory>

#include "tlab/errors.hpp"
#include "tlab/parallel.hpp"
#include "tlab/quantum/floquet.hpp"
#include "tlab/quantum/phase_space.hpp"
#include "tlab/rbm.hpp"
#include "tlab/tlsdyn.hpp"

namespace tlab::tls {

namespace {

using cd = std::complex<double>;

// exp(-i tau [[-w/2, c], [c, w/2]]) in (g, e) order: returns (gg, ge, ee).
struct Exp2 {
    cd a, b, c;
};

Exp2 tls_exp(double omega, double coupling, double tau) {
    const double half = 0.5 * omega;
    const double Om = std::hypot(half, coupling);
    const double cs = std::cos(Om * tau);
    const double sn = Om > 0 ? std::sin(Om * tau) / Om : tau;
    return {cd(cs, sn * half), cd(0.0, -sn * coupling), cd(cs, -sn * half)};
}

cd initial_g(const TlsInit& t) { return std::sin(0.5 * t.theta); }
cd initial_e(const TlsInit& t) { return std::polar(std::cos(0.5 * t.theta), t.phi); }

// Fixed-size chunks keep ensemble sums independent of the thread count.
constexpr std::size_t kChunk = 32;

struct Accum {
    std::vector<double> sz, sx, sy;
    explicit Accum(std::size_t n) : sz(n, 0.0), sx(n, 0.0), sy(n, 0.0) {}
    void add(std::size_t i, const Bloch& b) {
        sz[i] += b.z;
        sx[i] += b.x;
        sy[i] += b.y;
    }
    void add(const Accum& o) {
        for (std::size_t i = 0; i < sz.size(); ++i) {
            sz[i] += o.sz[i];
            sx[i] += o.sx[i];
            sy[i] += o.sy[i];
        }
    }
};

// Runs `member(i, acc)` for every ensemble member and returns the mean.
template <class Fn>
TimeSeries ensemble_mean(std::size_t n_traj, std::size_t n_samples, unsigned threads, double dt_rec,
                         int samples_per_period, Fn&& member) {
    if (n_traj == 0) throw InvalidParameter("n_traj must be positive");
    const std::size_t chunks = (n_traj + kChunk - 1) / kChunk;
    std::vector<Accum> parts(chunks, Accum(n_samples));
    parallel_for(chunks, threads, [&](std::size_t c) {
        const std::size_t end = std::min(n_traj, (c + 1) * kChunk);
        for (std::size_t i = c * kChunk; i < end; ++i) member(i, parts[c]);
    });
    Accum total(n_samples);
    for (const auto& p : parts) total.add(p);
    TimeSeries ts;
    ts.samples_per_period = samples_per_period;
    ts.n_members = n_traj;
    for (std::size_t i = 0; i < n_samples; ++i) {
        ts.t.push_back(dt_rec * i);
        ts.sz.push_back(total.sz[i] / n_traj);
        ts.sx.push_back(total.sx[i] / n_traj);
        ts.sy.push_back(total.sy[i] / n_traj);
    }
    return ts;
}

void step_tls(double omega, double g, double p, double dt, cd& cg, cd& ce) {
    const Exp2 e = tls_exp(omega, g * p, dt);
    const cd ng = e.a * cg + e.b * ce;
    ce = e.b * cg + e.c * ce;
    cg = ng;
}

constexpr int kDriveIntervals = 200;  // per period
constexpr int kPendulumSubsteps = 5;  // dt = T/1000

int record_stride(int samples_per_period) {
    if (samples_per_period < 1 || kDriveIntervals % samples_per_period != 0)
        throw InvalidParameter("samples_per_period must divide 200");
    return kDriveIntervals / samples_per_period;
}

}  // namespace

void validate(const TlsInit& t) {
    if (!(t.theta >= 0 && t.theta <= kPi)) throw InvalidParameter("theta must be in [0, pi]");
    if (!(t.phi >= 0 && t.phi < 2 * kPi)) throw InvalidParameter("phi must be in [0, 2 pi)");
}

Bloch bloch(cd c_g, cd c_e) {
    const cd ge = std::conj(c_g) * c_e;
    return {2 * ge.real(), 2 * (-ge).imag(), std::norm(c_e) - std::norm(c_g)};
}

TimeSeries stroboscopic(const TimeSeries& ts) {
    TimeSeries out;
    out.samples_per_period = 1;
    out.n_members = ts.n_members;
    out.notes = ts.notes;
    for (std::size_t i = 0; i < ts.t.size(); ++i) {
        const double n = ts.t[i] / kPeriod;
        if (std::abs(n - std::round(n)) > 1e-9 * std::max(1.0, n)) continue;
        out.t.push_back(ts.t[i]);
        out.sz.push_back(ts.sz[i]);
        out.sx.push_back(ts.sx[i]);
        out.sy.push_back(ts.sy[i]);
    }
    return out;
}

// ---- coupled ---------------------------------------------------------------

CoupledPropagator::CoupledPropagator(const quantum::TransmonBasis& b, double xi_d,
                                     double omega_q_t, double g_t, int M, unsigned threads)
    : d_(b.d), transmon_(b, xi_d, M, threads) {
    if (!(omega_q_t >= 0)) throw InvalidParameter("omega_q_t must be non-negative");
    if (!(g_t >= 0)) throw InvalidParameter("g_t must be non-negative");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b.n_op);
    W_ = es.eigenvectors();
    nu_ = es.eigenvalues();
    transmon_.change_basis(W_);
    const double h = transmon_.step_size();
    auto fill = [&](double tau, Eigen::VectorXcd& a, Eigen::VectorXcd& bb, Eigen::VectorXcd& c) {
        a.resize(d_);
        bb.resize(d_);
        c.resize(d_);
        for (int j = 0; j < d_; ++j) {
            const Exp2 e = tls_exp(omega_q_t, g_t * b.params.hbar_eff * nu_(j), tau);
            a(j) = e.a;
            bb(j) = e.b;
            c(j) = e.c;
        }
    };
    fill(0.5 * h, half_a_, half_b_, half_c_);
    fill(h, full_a_, full_b_, full_c_);
}

void CoupledPropagator::apply_tls(Eigen::MatrixXcd& U, bool half) const {
    const auto& a = half ? half_a_ : full_a_;
    const auto& bb = half ? half_b_ : full_b_;
    const auto& c = half ? half_c_ : full_c_;
    Eigen::MatrixXcd g = U.topRows(d_);
    Eigen::MatrixXcd e = U.bottomRows(d_);
    U.topRows(d_) = a.asDiagonal() * g + bb.asDiagonal() * e;
    U.bottomRows(d_) = bb.asDiagonal() * g + c.asDiagonal() * e;
}

std::vector<Eigen::MatrixXcd> CoupledPropagator::sampled(int s) const {
    const int M = steps();
    if (s < 1 || M % s != 0) throw InvalidParameter("samples_per_period must divide the step count");
    const int stride = M / s;
    std::vector<Eigen::MatrixXcd> out;
    Eigen::MatrixXcd U = Eigen::MatrixXcd::Identity(2 * d_, 2 * d_);
    apply_tls(U, true);
    for (int k = 0; k < M; ++k) {
        const Eigen::MatrixXcd& F = transmon_.step(k);
        U.topRows(d_) = F * U.topRows(d_);
        U.bottomRows(d_) = F * U.bottomRows(d_);
        if ((k + 1) % stride == 0) {
            Eigen::MatrixXcd V = U;
            apply_tls(V, true);
            out.push_back(std::move(V));
        }
        if (k + 1 < M) apply_tls(U, false);
    }
    return out;
}

Eigen::VectorXcd CoupledPropagator::product_state(const TlsInit& tls, int k) const {
    if (k < 0 || k >= d_) throw InvalidParameter("transmon level out of range");
    const Eigen::VectorXcd w = W_.row(k).transpose().cast<cd>();
    Eigen::VectorXcd v(2 * d_);
    v.head(d_) = initial_g(tls) * w;
    v.tail(d_) = initial_e(tls) * w;
    return v;
}

CoupledConvergence converge_coupled(const quantum::TransmonBasis& b, double xi_d, double omega_q_t,
                                    double g_t, int M, double tol, unsigned threads) {
    CoupledConvergence r;
    Eigen::MatrixXcd prev = CoupledPropagator(b, xi_d, omega_q_t, g_t, M, threads).monodromy();
    for (int attempt = 0; attempt <= 2; ++attempt) {
        Eigen::MatrixXcd next = CoupledPropagator(b, xi_d, omega_q_t, g_t, 2 * M, threads).monodromy();
        r.errors.push_back((prev - next).cwiseAbs().maxCoeff());
        if (r.errors.back() <= tol) {
            r.steps_per_period = M;
            return r;
        }
        M *= 2;
        prev = std::move(next);
    }
    throw AccuracyError("coupled propagator not converged after two doublings (error " +
                        std::to_string(r.errors.back()) + ")");
}

CoupledRun evolve_coupled_quantum(const ModelParams& params, const quantum::BasisSize& size,
                                  const TlsInit& tls, const std::vector<double>& n_g_list,
                                  int n_periods, int s, int M, unsigned threads) {
    validate(params);
    validate(tls);
    if (n_g_list.empty()) throw InvalidParameter("empty n_g list");
    if (n_periods < 1) throw InvalidParameter("n_periods must be >= 1");
    const std::size_t m = n_g_list.size();
    const std::size_t n_samples = static_cast<std::size_t>(n_periods) * s + 1;
    std::vector<Accum> parts(m, Accum(n_samples));
    std::vector<double> dev(m, 0.0);
    CoupledRun run;
    {
        ModelParams p = params;
        p.n_g = n_g_list.front();
        run.convergence = converge_coupled(quantum::build_basis(p, size.D, size.d), params.xi_d,
                                           params.omega_q_t, params.g_t, M, quantum::kDefaultPeriodTolerance,
                                           threads);
    }
    const int steps = run.convergence.steps_per_period;
    parallel_for(m, threads, [&](std::size_t i) {
        ModelParams p = params;
        p.n_g = n_g_list[i];
        const quantum::TransmonBasis b = quantum::build_basis(p, size.D, size.d);
        const CoupledPropagator cp(b, params.xi_d, params.omega_q_t, params.g_t, steps);
        const std::vector<Eigen::MatrixXcd> Us = cp.sampled(s);
        dev[i] = quantum::unitarity_deviation(Us.back());
        const int d = b.d;
        auto record = [&](std::size_t k, const Eigen::VectorXcd& v) {
            const cd ge = v.head(d).dot(v.tail(d));
            parts[i].add(k, {2 * ge.real(), -2 * ge.imag(),
                             v.tail(d).squaredNorm() - v.head(d).squaredNorm()});
        };
        Eigen::VectorXcd psi = cp.product_state(tls, 0);
        for (int n = 0; n < n_periods; ++n) {
            const std::size_t base = static_cast<std::size_t>(n) * s;
            record(base, psi);
            for (int j = 1; j < s; ++j) record(base + j, Us[j - 1] * psi);
            psi = Us.back() * psi;
        }
        record(n_samples - 1, psi);
    });
    Accum total(n_samples);
    for (const auto& p : parts) total.add(p);
    run.max_unitarity_deviation = *std::max_element(dev.begin(), dev.end());
    TimeSeries& ts = run.series;
    ts.samples_per_period = s;
    ts.n_members = m;
    for (std::size_t k = 0; k < n_samples; ++k) {
        ts.t.push_back(kPeriod * static_cast<double>(k) / s);
        ts.sz.push_back(total.sz[k] / m);
        ts.sx.push_back(total.sx[k] / m);
        ts.sy.push_back(total.sy[k] / m);
    }
    return run;
}

// ---- semiclassical -----------------------------------------------------------

TimeSeries evolve_semiclassical(double omega_q_t, double g_t, const DriveSignal& drive,
                                const TlsInit& tls, std::size_t stride) {
    validate(tls);
    if (!(drive.dt > 0)) throw InvalidParameter("drive dt must be positive");
    if (drive.dt > kMaxDriveDt * (1 + 1e-12)) throw AccuracyError("drive grid coarser than T/50");
    if (stride < 1) throw InvalidParameter("stride must be >= 1");
    cd cg = initial_g(tls), ce = initial_e(tls);
    TimeSeries ts;
    auto record = [&](std::size_t k) {
        const Bloch b = bloch(cg, ce);
        ts.t.push_back(drive.t0 + drive.dt * k);
        ts.sz.push_back(b.z);
        ts.sx.push_back(b.x);
        ts.sy.push_back(b.y);
    };
    record(0);
    for (std::size_t k = 0; k < drive.p.size(); ++k) {
        step_tls(omega_q_t, g_t, drive.p[k], drive.dt, cg, ce);
        if ((k + 1) % stride == 0) record(k + 1);
    }
    const double per = kPeriod / (drive.dt * stride);
    ts.samples_per_period = std::abs(per - std::round(per)) < 1e-9 ? static_cast<int>(std::round(per)) : 0;
    return ts;
}

TimeSeries pendulum_driven(double lambda, double xi_d, const pendulum::Sampler& init,
                           const SemiclassicalSpec& spec) {
    validate(spec.tls);
    if (spec.n_periods < 1) throw InvalidParameter("n_periods must be >= 1");
    const int stride = record_stride(spec.samples_per_period);
    const double dt_drive = kPeriod / kDriveIntervals;
    const double dt = dt_drive / kPendulumSubsteps;
    const std::size_t n_int = static_cast<std::size_t>(spec.n_periods) * kDriveIntervals;
    const std::size_t n_samples = n_int / stride + 1;
    TimeSeries ts = ensemble_mean(
        spec.n_traj, n_samples, spec.threads, dt_drive * stride, spec.samples_per_period,
        [&](std::size_t i, Accum& acc) {
            Rng rng = make_rng(spec.seed, i);
            pendulum::PhasePoint s = init(i, rng);
            s.t = 0.0;
            cd cg = initial_g(spec.tls), ce = initial_e(spec.tls);
            acc.add(0, bloch(cg, ce));
            for (std::size_t k = 0; k < n_int; ++k) {
                double p = 0.0;
                for (int j = 0; j < kPendulumSubsteps; ++j) p += pendulum::leapfrog_step(lambda, xi_d, s, dt);
                step_tls(spec.omega_q_t, spec.g_t, p / kPendulumSubsteps, dt_drive, cg, ce);
                if ((k + 1) % stride == 0) acc.add((k + 1) / stride, bloch(cg, ce));
            }
        });
    ts.notes.push_back("pendulum drive, dt = T/1000, drive interval T/200");
    return ts;
}

pendulum::Sampler ground_state_sampler(const ModelParams& params, const quantum::BasisSize& size) {
    const quantum::TransmonBasis b = quantum::build_basis(params, size.D, size.d);
    auto hs = std::make_shared<const quantum::HusimiSampler>(b, quantum::eigenstate(b, 0).amplitudes);
    return [hs](std::size_t i, Rng& rng) { return (*hs)(i, rng); };
}

TimeSeries rbm_driven(double D, double p_bar, const SemiclassicalSpec& spec) {
    validate(spec.tls);
    if (!(D > 0) || !(p_bar > 0)) throw InvalidParameter("D and p_bar must be positive");
    if (spec.n_periods < 1) throw InvalidParameter("n_periods must be >= 1");
    const int stride = record_stride(spec.samples_per_period);
    const double dt = kPeriod / kDriveIntervals;
    const std::size_t n_int = static_cast<std::size_t>(spec.n_periods) * kDriveIntervals;
    const std::size_t n_samples = n_int / stride + 1;
    TimeSeries ts = ensemble_mean(
        spec.n_traj, n_samples, spec.threads, dt * stride, spec.samples_per_period,
        [&](std::size_t i, Accum& acc) {
            Rng rng = make_rng(spec.seed, i);
            const double p0 = p_bar * (2 * Normal::uniform(rng) - 1);
            rbm::PathStream path(D, p_bar, dt, p0, std::move(rng));
            cd cg = initial_g(spec.tls), ce = initial_e(spec.tls);
            acc.add(0, bloch(cg, ce));
            double v0 = path.value();
            for (std::size_t k = 0; k < n_int; ++k) {
                const double v1 = path.next();
                step_tls(spec.omega_q_t, spec.g_t, 0.5 * (v0 + v1), dt, cg, ce);
                v0 = v1;
                if ((k + 1) % stride == 0) acc.add((k + 1) / stride, bloch(cg, ce));
            }
        });
    ts.notes.push_back("rbm drive, dt = T/200");
    return ts;
}

// ---- analysis ----------------------------------------------------------------

DecayFit extract_rate(const TimeSeries& trace, int n_periods) {
    const TimeSeries ts = stroboscopic(trace);
    std::vector<double> x, y;
    for (std::size_t i = 0; i < ts.t.size(); ++i) {
        if (ts.t[i] > n_periods * kPeriod * (1 + 1e-12)) break;
        if (!(std::abs(ts.sz[i]) > 1e-6)) throw RangeError("|sz| must exceed 1e-6 over the fit window");
        x.push_back(ts.t[i]);
        y.push_back(std::log(std::abs(ts.sz[i])));
    }
    if (x.size() < 20) throw InsufficientData("fewer than 20 stroboscopic points in the fit window");
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    DecayFit f;
    const double slope = sxy / sxx;
    f.rate = -slope;
    f.intercept = my - slope * mx;
    f.r_squared = syy > 0 ? sxy * sxy / (sxx * syy) : 1.0;
    f.window = n_periods;
    f.n_points = x.size();
    return f;
}

double dominant_frequency(const std::vector<double>& x, double dt) {
    const std::size_t n = x.size();
    if (n < 4) throw InsufficientData("need at least 4 samples");
    double mean = 0;
    for (double v : x) mean += v;
    mean /= n;
    std::vector<double> power(n / 2 + 1, 0.0);
    for (std::size_t k = 1; k <= n / 2; ++k) {
        cd acc = 0;
        for (std::size_t j = 0; j < n; ++j) acc += (x[j] - mean) * std::polar(1.0, -2 * kPi * k * j / n);
        power[k] = std::norm(acc);
    }
    const std::size_t k = std::max_element(power.begin() + 1, power.end()) - power.begin();
    double delta = 0.0;
    if (k > 1 && k < n / 2) {
        const double a = power[k - 1], b = power[k], c = power[k + 1];
        const double den = a - 2 * b + c;
        if (den != 0) delta = 0.5 * (a - c) / den;
    }
    return 2 * kPi * (k + delta) / (n * dt);
}

std::vector<double> upper_envelope(const std::vector<double>& t, const std::vector<double>& x,
                                   double window) {
    if (t.size() != x.size() || t.size() < 3) throw InsufficientData("need at least 3 samples");
    if (!(window > 0)) throw InvalidParameter("window must be positive");
    const double dt = t[1] - t[0];
    struct Peak {
        double t, v;
    };
    std::vector<Peak> peaks;
    for (std::size_t i = 1; i + 1 < x.size(); ++i) {
        if (!(x[i] >= x[i - 1] && x[i] > x[i + 1])) continue;
        const double a = x[i - 1], b = x[i], c = x[i + 1];
        const double den = a - 2 * b + c;
        double off = 0, v = b;
        if (den < 0) {
            off = 0.5 * (a - c) / den;
            v = b - 0.25 * (a - c) * off;
        }
        peaks.push_back({t[i] + off * dt, v});
    }
    // Largest peak per window [t0 + m w, t0 + (m+1) w).
    std::vector<Peak> chosen;
    long current = -1;
    for (const Peak& p : peaks) {
        const long m = static_cast<long>(std::floor((p.t - t.front()) / window));
        if (m != current) {
            chosen.push_back(p);
            current = m;
        } else if (p.v > chosen.back().v) {
            chosen.back() = p;
        }
    }
    std::vector<double> env(t.size());
    if (chosen.empty()) {
        const double mx = *std::max_element(x.begin(), x.end());
        std::fill(env.begin(), env.end(), mx);
        return env;
    }
    std::size_t j = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] <= chosen.front().t) {
            env[i] = chosen.front().v;
        } else if (t[i] >= chosen.back().t) {
            env[i] = chosen.back().v;
        } else {
            while (chosen[j + 1].t < t[i]) ++j;
            const double w = (t[i] - chosen[j].t) / (chosen[j + 1].t - chosen[j].t);
            env[i] = (1 - w) * chosen[j].v + w * chosen[j + 1].v;
        }
    }
    return env;
}

std::vector<double> upper_envelope(const TimeSeries& ts) {
    if (ts.t.size() < 3) throw InsufficientData("need at least 3 samples");
    const double dt = ts.t[1] - ts.t[0];
    std::size_t n = ts.t.size();
    const double head = 50 * kPeriod;
    while (n > 4 && ts.t[n - 1] - ts.t[0] > head) --n;
    const std::vector<double> x(ts.sx.begin(), ts.sx.begin() + n);
    const double w = dominant_frequency(x, dt);
    return upper_envelope(ts.t, ts.sx, 2 * kPi / w);
}

bool resonance_flag(double omega) {
    for (double r : {0.5, 1.0, 1.5, 2.0})
        if (std::abs(omega - r) <= 0.02 + 1e-12) return true;
    return false;
}

// ---- plateau ---------------------------------------------------------------

namespace {

constexpr int kPlateauSamples = 16;

struct ModeData {
    std::vector<double> z, z_avg, rg, re, ipr_f, ipr_s;
    std::vector<cd> og, oe;  // <block|0> (unnormalized blocks)
    Eigen::VectorXd eps;
    double dev = 0.0;
};

ModeData coupled_modes(const ModelParams& params, const quantum::BasisSize& size, int M) {
    const quantum::TransmonBasis b = quantum::build_basis(params, size.D, size.d);
    const CoupledPropagator cp(b, params.xi_d, params.omega_q_t, params.g_t, M);
    const std::vector<Eigen::MatrixXcd> Us = cp.sampled(M % kPlateauSamples == 0 ? kPlateauSamples : 1);
    const Eigen::MatrixXcd& U = Us.back();
    ModeData md;
    md.dev = quantum::unitarity_deviation(U);
    const quantum::FloquetDecomposition f = quantum::floquet_from_monodromy(U);
    const quantum::FloquetDecomposition fr = quantum::floquet_from_monodromy(cp.transmon_monodromy());
    md.eps = f.quasienergies;
    const int d = b.d;
    const Eigen::MatrixXcd Wc = cp.charge_eigvecs().cast<cd>();
    const Eigen::VectorXcd w0 = Wc.row(0).transpose();
    for (int a = 0; a < 2 * d; ++a) {
        const Eigen::VectorXcd vg = f.modes.col(a).head(d), ve = f.modes.col(a).tail(d);
        const double rg2 = vg.squaredNorm(), re2 = ve.squaredNorm();
        md.z.push_back(re2 - rg2);
        // sigma_z of the mode at t_j = jT/s, j = 0..s-1, averaged.
        double zs = re2 - rg2;
        for (std::size_t j = 0; j + 1 < Us.size(); ++j) {
            const Eigen::VectorXcd v = Us[j] * f.modes.col(a);
            zs += v.tail(d).squaredNorm() - v.head(d).squaredNorm();
        }
        md.z_avg.push_back(zs / Us.size());
        md.rg.push_back(std::sqrt(rg2));
        md.re.push_back(std::sqrt(re2));
        md.og.push_back(vg.dot(w0));
        md.oe.push_back(ve.dot(w0));
        const Eigen::VectorXcd pf_g = fr.modes.adjoint() * vg, pf_e = fr.modes.adjoint() * ve;
        const Eigen::VectorXcd ps_g = Wc * vg, ps_e = Wc * ve;
        md.ipr_f.push_back(pf_g.cwiseAbs2().squaredNorm() + pf_e.cwiseAbs2().squaredNorm());
        md.ipr_s.push_back(ps_g.cwiseAbs2().squaredNorm() + ps_e.cwiseAbs2().squaredNorm());
    }
    return md;
}

}  // namespace

std::vector<PlateauEstimate> plateau_floquet(const ModelParams& params, const quantum::BasisSize& size,
                                             const std::vector<TlsInit>& tls,
                                             const std::vector<double>& n_g_list, double ipr_cut,
                                             int M, unsigned threads) {
    validate(params);
    for (const auto& t : tls) validate(t);
    if (n_g_list.empty()) throw InvalidParameter("empty n_g list");
    if (tls.empty()) throw InvalidParameter("no initial states");
    const std::size_t m = n_g_list.size();
    std::vector<ModeData> data(m);
    parallel_for(m, threads, [&](std::size_t i) {
        ModelParams p = params;
        p.n_g = n_g_list[i];
        data[i] = coupled_modes(p, size, M);
    });
    std::vector<PlateauEstimate> out(tls.size());
    for (std::size_t s = 0; s < tls.size(); ++s) {
        const TlsInit& t = tls[s];
        const cd ig = initial_g(t), ie = initial_e(t);
        const double sg2 = std::norm(ig), se2 = std::norm(ie);
        PlateauEstimate& est = out[s];
        for (const ModeData& md : data) {
            double dressed = 0, l_alpha = 0, sum_g = 0, sum_e = 0, sum_z2 = 0;
            int n_ch = 0, n_floquet = 0;
            for (std::size_t a = 0; a < md.z.size(); ++a) {
                const double c2 = std::norm(std::conj(md.og[a]) * ig + std::conj(md.oe[a]) * ie);
                dressed += c2 * md.z_avg[a];
                n_floquet += md.ipr_f[a] < ipr_cut;
                if (!(md.ipr_s[a] < ipr_cut)) continue;
                ++n_ch;
                l_alpha += c2 * md.z[a];
                sum_g += md.rg[a] * md.rg[a] * md.z[a];
                sum_e += md.re[a] * md.re[a] * md.z[a];
                sum_z2 += md.z[a] * md.z[a];
            }
            if (n_ch == 0) throw EmptyLayer("no chaotic coupled Floquet modes");
            const double N = 0.5 * n_ch;
            est.z_ss_dressed2 += dressed;
            est.z_ss_l_alpha += l_alpha;
            est.z_ss_uniform += (sg2 * sum_g + se2 * sum_e) / N;
            est.z_ss_var += sum_z2 / (2 * N);
            est.n_chaotic += n_ch;
            est.n_chaotic_floquet_ref += n_floquet;
            est.max_unitarity_deviation = std::max(est.max_unitarity_deviation, md.dev);
        }
        est.z_ss_dressed2 /= m;
        est.z_ss_l_alpha /= m;
        est.z_ss_uniform /= m;
        est.z_ss_var /= m;
        est.n_chaotic /= m;
        est.n_chaotic_floquet_ref /= m;
    }
    return out;
}

PlateauEstimate plateau_floquet(const ModelParams& params, const quantum::BasisSize& size,
                                const TlsInit& tls, const std::vector<double>& n_g_list,
                                double ipr_cut, int M, unsigned threads) {
    return plateau_floquet(params, size, std::vector<TlsInit>{tls}, n_g_list, ipr_cut, M, threads)
        .front();
}

std::vector<CoupledFloquetMode> coupled_floquet_modes(const ModelParams& params,
                                                      const quantum::BasisSize& size, int M,
                                                      unsigned) {
    validate(params);
    const ModeData md = coupled_modes(params, size, M);
    std::vector<CoupledFloquetMode> out;
    for (std::size_t a = 0; a < md.z.size(); ++a)
        out.push_back({md.eps(a), md.ipr_f[a], md.ipr_s[a], md.z[a]});
    return out;
}

}  // namespace tlab::tls
