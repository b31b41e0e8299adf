#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>

#include "tlab/chaoscrit.hpp"
#include "tlab/expcli.hpp"
#include "tlab/parallel.hpp"
#include "tlab/pendulum.hpp"
#include "tlab/quantum/dynamics.hpp"
#include "tlab/quantum/floquet.hpp"
#include "tlab/quantum/phase_space.hpp"
#include "tlab/rbm.hpp"
#include "tlab/tlsdyn.hpp"

namespace tlab::cli {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kPsdTerms = 2001;

const std::map<std::string, std::string>& schemas() {
    static const std::map<std::string, std::string> s = {
        {"chaotic-layer",
         "chaotic_layer.csv: xi_d, m_bar, p_bar, near_tangent\n"
         "chaotic_layer_resonances.csv: xi_d, m, width, upper_at_zero, lower_at_zero\n"
         "  resonance m is the band m + xi_d cos t +- width/2 in the (t, p) plane"},
        {"poincare", "poincare.csv: orbit, t, theta, p  (stroboscopic, theta wrapped)"},
        {"pdist",
         "pdist_classical.csv: p_lo, p_hi, prob  (pendulum ensemble at the last period)\n"
         "pdist_rbm.csv: p_lo, p_hi, prob  (reflected Brownian motion at the last period)\n"
         "pdist_quantum.csv: n, p, prob  (P(n) averaged over offset charges)"},
        {"sigma-p", "sigma_p.csv: xi_d, sigma_p_classical, sigma_star_C, sigma_p_quantum, sigma_star_Q"},
        {"crossings",
         "crossings_trajectory.csv: t, theta, p\n"
         "crossings_events.csv: period, t, p  (sign changes of p - xi_d cos t)\n"
         "crossings_jumps.csv: period, dp  (p((n+1)T) - p(nT))"},
        {"relax", "relax.csv: t, sz_qm, sz_cm, sz_rbm"},
        {"rates",
         "rates.csv: omega_q_t, gamma_qm_up, gamma_qm_down, gamma_cm, gamma_rbm, gamma_fgr, resonance_flag\n"
         "  gamma_* are fitted sigma_z decay rates divided by 2; gamma_fgr = g^2 S(omega_q_t)\n"
         "  gamma_qm_up starts the TLS in |g>, all others in |e>; nan when no fit is possible"},
        {"plateau",
         "plateau.csv: g_t, z_ss_dressed2, z_ss_l_alpha, z_ss_uniform, z_ss_var, n_chaotic, "
         "n_chaotic_floquet_ref"},
        {"dephase", "dephase.csv: t, sx_qm, sx_cm, sx_rbm, env_qm, env_cm, env_rbm"},
        {"rmatrix", "rmatrix.csv: n_g, alpha, beta, k, Delta, R_sq"},
        {"rbm-psd", "rbm_psd.csv: omega, psd_series, psd_paper_two_term"},
        {"rbm-path", "rbm_path.csv: t, p"},
        {"floquet-spectrum", "floquet_spectrum.csv: n_g, index, quasienergy, ipr"},
    };
    return s;
}

void set_variable(ModelParams& m, const std::string& name, double v) {
    if (name == "lambda") m.lambda = v;
    else if (name == "xi_d") m.xi_d = v;
    else if (name == "hbar_eff") m.hbar_eff = v;
    else if (name == "omega_q_t") m.omega_q_t = v;
    else if (name == "g_t") m.g_t = v;
    else if (name == "n_g") m.n_g = v;
    else throw ConfigError("cannot sweep over '" + name + "'");
}

quantum::BasisSize basis_size(const ExperimentConfig& c) { return {c.numerics.D, c.numerics.d}; }

std::vector<double> n_g_list(const ExperimentConfig& c) {
    return quantum::offset_charge_grid(c.numerics.n_g_count);
}

struct RbmChoice {
    double D, p_bar;
};

RbmChoice rbm_choice(const ExperimentConfig& c, const ModelParams& m) {
    RbmChoice r{};
    r.D = c.rbm_D ? *c.rbm_D : chaos::diffusion_rate(m.lambda, m.xi_d);
    r.p_bar = c.rbm_p_bar ? *c.rbm_p_bar : chaos::chaotic_layer_bound(m.lambda, m.xi_d).p_bar;
    if (!(r.p_bar > 0)) throw ConfigError("no chaotic layer at this drive; give rbm.p_bar");
    return r;
}

pendulum::EnsembleSpec pendulum_ensemble(const ExperimentConfig& c, const ModelParams& m) {
    return {c.n_traj, c.seed, tls::ground_state_sampler(m, basis_size(c))};
}

json pendulum_convergence(const ExperimentConfig& c, const ModelParams& m,
                          const pendulum::EnsembleSpec& ens, unsigned threads) {
    const auto r = pendulum::convergence_check(m.lambda, m.xi_d, ens, c.numerics.dt, 2, 1e-4, threads);
    if (!r.passed) throw AccuracyError("pendulum ensemble not converged at dt");
    return {{"subsample", r.subsample},     {"horizon_periods", r.horizon_periods},
            {"max_mean_diff", r.max_mean_diff}, {"max_std_diff", r.max_std_diff},
            {"tolerance", r.tolerance},     {"passed", r.passed}};
}

json quantum_convergence(const ExperimentConfig& c, const ModelParams& m, unsigned threads) {
    ModelParams p = m;
    p.n_g = n_g_list(c).front();
    const auto b = quantum::build_basis(p, c.numerics.D, c.numerics.d);
    const auto r = quantum::converge_steps(b, m.xi_d, c.numerics.steps_per_period,
                                           quantum::kDefaultPeriodTolerance, threads);
    return {{"n_g", p.n_g}, {"steps_per_period", r.steps_per_period}, {"tried", r.tried},
            {"errors", r.errors}, {"tolerance", r.tolerance}};
}

json coupled_convergence(const tls::CoupledConvergence& r) {
    return {{"steps_per_period", r.steps_per_period}, {"errors", r.errors},
            {"tolerance", quantum::kDefaultPeriodTolerance}};
}

tls::SemiclassicalSpec semiclassical(const ExperimentConfig& c, const ModelParams& m,
                                     const tls::TlsInit& t, unsigned threads) {
    tls::SemiclassicalSpec s;
    s.omega_q_t = m.omega_q_t;
    s.g_t = m.g_t;
    s.tls = t;
    s.n_periods = c.numerics.n_periods;
    s.samples_per_period = c.numerics.samples_per_period;
    s.n_traj = c.n_traj;
    s.seed = c.seed;
    s.threads = threads;
    return s;
}

double fitted_gamma(const tls::TimeSeries& ts, int n_periods) {
    try {
        return tls::extract_rate(ts, n_periods).rate / 2;
    } catch (const RangeError&) {
        return kNaN;
    } catch (const InsufficientData&) {
        return kNaN;
    }
}

// Context handed to every experiment body: one sweep point at a time.
struct Point {
    const ExperimentConfig& c;
    ModelParams m;
    unsigned threads;
    json& conv;  // convergence records for this point
};

using Tables = std::vector<Table>;

// ---- point experiments ---------------------------------------------------

Tables run_poincare(Point& pt) {
    const auto& c = pt.c;
    const double p_bar = chaos::chaotic_layer_bound(pt.m.lambda, pt.m.xi_d).p_bar;
    std::vector<pendulum::PhasePoint> ics;
    if (c.n_traj == 1) {
        ics.push_back({c.initial_theta, c.initial_p, 0.0});
    } else {
        const double P = p_bar + 2.0;
        for (std::size_t i = 0; i < c.n_traj; ++i)
            ics.push_back({c.initial_theta, -P + 2 * P * i / (c.n_traj - 1), 0.0});
    }
    const auto sec = pendulum::poincare_section(pt.m.lambda, pt.m.xi_d, ics, c.numerics.n_periods,
                                                c.numerics.dt, pt.threads);
    Table t("poincare", {"orbit", "t", "theta", "p"}, {true});
    for (std::size_t o = 0; o < sec.size(); ++o)
        for (const auto& s : sec[o]) t.add({double(o), s.t, s.theta, s.p});
    return {t};
}

Tables run_pdist(Point& pt) {
    const auto& c = pt.c;
    const auto& m = pt.m;
    const double p_bar = chaos::chaotic_layer_bound(m.lambda, m.xi_d).p_bar;
    const double lo = -(p_bar + 2.0), hi = p_bar + 2.0;
    const auto ens = pendulum_ensemble(c, m);
    pt.conv["pendulum"] = pendulum_convergence(c, m, ens, pt.threads);
    const auto hc = pendulum::momentum_histogram(m.lambda, m.xi_d, ens, c.numerics.n_periods,
                                                 c.numerics.bins, lo, hi, c.numerics.dt, pt.threads);
    Table tc("pdist_classical", {"p_lo", "p_hi", "prob"});
    for (std::size_t i = 0; i < hc.prob.size(); ++i) tc.add({hc.edges[i], hc.edges[i + 1], hc.prob[i]});

    const RbmChoice r = rbm_choice(c, m);
    const double t_end = c.numerics.n_periods * kPeriod;
    const double dt = kPeriod / 200.0;
    std::vector<double> finals(c.n_traj);
    parallel_for(c.n_traj, pt.threads, [&](std::size_t i) {
        Rng rng = make_rng(c.seed, i);
        const double p0 = r.p_bar * (2 * Normal::uniform(rng) - 1);
        rbm::PathStream path(r.D, r.p_bar, dt, p0, std::move(rng));
        const auto n = static_cast<std::size_t>(std::llround(t_end / dt));
        for (std::size_t k = 0; k < n; ++k) path.next();
        finals[i] = path.value();
    });
    const auto hr = pendulum::histogram(finals, c.numerics.bins, lo, hi);
    Table tr("pdist_rbm", {"p_lo", "p_hi", "prob"});
    for (std::size_t i = 0; i < hr.prob.size(); ++i) tr.add({hr.edges[i], hr.edges[i + 1], hr.prob[i]});

    pt.conv["quantum"] = quantum_convergence(c, m, pt.threads);
    const auto q = quantum::quantum_momentum_run(m, n_g_list(c), basis_size(c), c.numerics.n_periods,
                                                 c.numerics.steps_per_period, pt.threads);
    pt.conv["quantum"]["max_unitarity_deviation"] = q.max_unitarity_deviation;
    Table tq("pdist_quantum", {"n", "p", "prob"}, {true});
    const int D = c.numerics.D;
    for (int i = 0; i < q.P_final.size(); ++i) tq.add({double(i - D), m.hbar_eff * (i - D), q.P_final(i)});
    return {tc, tr, tq};
}

Tables run_crossings(Point& pt) {
    const auto& c = pt.c;
    const auto tr = pendulum::resonance_crossing_trace(pt.m.lambda, pt.m.xi_d,
                                                       {c.initial_theta, c.initial_p, 0.0},
                                                       c.numerics.n_periods, c.numerics.dt,
                                                       c.numerics.record_stride);
    Table a("crossings_trajectory", {"t", "theta", "p"});
    for (const auto& s : tr.trajectory) a.add({s.t, s.theta, s.p});
    Table b("crossings_events", {"period", "t", "p"}, {true});
    for (const auto& x : tr.crossings) b.add({double(x.period), x.t, x.p});
    Table j("crossings_jumps", {"period", "dp"}, {true});
    for (std::size_t n = 0; n < tr.period_jumps.size(); ++n) j.add({double(n), tr.period_jumps[n]});
    return {a, b, j};
}

struct ThreeModel {
    tls::TimeSeries qm, cm, rbm;
};

ThreeModel three_model(Point& pt, const tls::TlsInit& t) {
    const auto& c = pt.c;
    const auto& m = pt.m;
    ThreeModel out;
    const auto run = tls::evolve_coupled_quantum(m, basis_size(c), t, n_g_list(c), c.numerics.n_periods,
                                                 c.numerics.samples_per_period,
                                                 c.numerics.steps_per_period, pt.threads);
    out.qm = run.series;
    pt.conv["quantum"] = coupled_convergence(run.convergence);
    pt.conv["quantum"]["max_unitarity_deviation"] = run.max_unitarity_deviation;
    const auto ens = pendulum_ensemble(c, m);
    pt.conv["pendulum"] = pendulum_convergence(c, m, ens, pt.threads);
    const auto spec = semiclassical(c, m, t, pt.threads);
    out.cm = tls::pendulum_driven(m.lambda, m.xi_d, ens.sampler, spec);
    const RbmChoice r = rbm_choice(c, m);
    out.rbm = tls::rbm_driven(r.D, r.p_bar, spec);
    return out;
}

Tables run_relax(Point& pt) {
    const auto s = three_model(pt, {pt.c.tls_theta, pt.c.tls_phi});
    Table t("relax", {"t", "sz_qm", "sz_cm", "sz_rbm"});
    for (std::size_t i = 0; i < s.qm.t.size(); ++i) t.add({s.qm.t[i], s.qm.sz[i], s.cm.sz[i], s.rbm.sz[i]});
    return {t};
}

Tables run_dephase(Point& pt) {
    const auto s = three_model(pt, {pt.c.tls_theta, pt.c.tls_phi});
    const auto eq = tls::upper_envelope(s.qm);
    const auto ec = tls::upper_envelope(s.cm);
    const auto er = tls::upper_envelope(s.rbm);
    Table t("dephase", {"t", "sx_qm", "sx_cm", "sx_rbm", "env_qm", "env_cm", "env_rbm"});
    for (std::size_t i = 0; i < s.qm.t.size(); ++i)
        t.add({s.qm.t[i], s.qm.sx[i], s.cm.sx[i], s.rbm.sx[i], eq[i], ec[i], er[i]});
    return {t};
}

Tables run_rmatrix(Point& pt) {
    const auto& c = pt.c;
    pt.conv["quantum"] = quantum_convergence(c, pt.m, pt.threads);
    Table t("rmatrix", {"n_g", "alpha", "beta", "k", "Delta", "R_sq"}, {false, true, true, true});
    for (double ng : n_g_list(c)) {
        ModelParams p = pt.m;
        p.n_g = ng;
        const auto b = quantum::build_basis(p, c.numerics.D, c.numerics.d);
        const auto rows = quantum::weighted_matrix_elements(b, p.xi_d, c.numerics.k_max, c.numerics.n_t,
                                                            c.numerics.steps_per_period, c.numerics.min_r_sq,
                                                            pt.threads);
        for (const auto& r : rows) t.add({r.n_g, double(r.alpha), double(r.beta), double(r.k), r.delta, r.r_sq});
    }
    return {t};
}

Tables run_rbm_path(Point& pt) {
    const auto& c = pt.c;
    const RbmChoice r = rbm_choice(c, pt.m);
    const auto path = rbm::generate_path({r.D, r.p_bar, c.numerics.dt, c.seed},
                                         c.numerics.n_periods * kPeriod, c.initial_p);
    Table t("rbm_path", {"t", "p"});
    for (std::size_t i = 0; i < path.times.size(); ++i) t.add({path.times[i], path.values[i]});
    return {t};
}

Tables run_floquet_spectrum(Point& pt) {
    const auto& c = pt.c;
    pt.conv["quantum"] = quantum_convergence(c, pt.m, pt.threads);
    Table t("floquet_spectrum", {"n_g", "index", "quasienergy", "ipr"}, {false, true});
    double dev = 0.0;
    for (double ng : n_g_list(c)) {
        ModelParams p = pt.m;
        p.n_g = ng;
        const auto b = quantum::build_basis(p, c.numerics.D, c.numerics.d);
        const auto f = quantum::floquet(b, p.xi_d, c.numerics.steps_per_period, pt.threads);
        dev = std::max(dev, f.unitarity_deviation);
        const Eigen::MatrixXcd ref = Eigen::MatrixXcd::Identity(b.d, b.d);
        for (int a = 0; a < f.quasienergies.size(); ++a)
            t.add({ng, double(a), f.quasienergies(a), quantum::ipr(f.modes.col(a), ref)});
    }
    pt.conv["quantum"]["max_unitarity_deviation"] = dev;
    return {t};
}

// ---- axis experiments (one row per sweep value) --------------------------

std::vector<double> row_chaotic_layer(Point& pt, Table& res) {
    const auto& m = pt.m;
    const auto l = chaos::chaotic_layer_bound(m.lambda, m.xi_d);
    const int m_max = std::min(200, 2 * static_cast<int>(std::ceil(m.xi_d)) + 20);
    for (const auto& r : chaos::resonance_curves(m.lambda, m.xi_d, m_max))
        res.add({m.xi_d, double(r.m), r.width, r.upper_at_zero, r.lower_at_zero});
    return {m.xi_d, l.m_bar ? double(*l.m_bar) : kNaN, l.p_bar, l.near_tangent ? 1.0 : 0.0};
}

std::vector<double> row_sigma_p(Point& pt) {
    const auto& c = pt.c;
    const auto& m = pt.m;
    const auto ens = pendulum_ensemble(c, m);
    const auto st = pendulum::ensemble_momentum_stats(m.lambda, m.xi_d, ens, c.numerics.n_periods,
                                                      c.numerics.dt, pt.threads);
    const double p_bar = chaos::chaotic_layer_bound(m.lambda, m.xi_d).p_bar;
    const auto q = quantum::quantum_momentum_run(m, n_g_list(c), basis_size(c), c.numerics.n_periods,
                                                 c.numerics.steps_per_period, pt.threads);
    const double sq = m.xi_d > 0
                          ? chaos::sigma_star_quantum(m.hbar_eff,
                                                      chaos::localization_length(
                                                          chaos::diffusion_rate(m.lambda, m.xi_d), m.hbar_eff))
                          : kNaN;
    pt.conv["max_unitarity_deviation"] = q.max_unitarity_deviation;
    return {m.xi_d, st.sigma_bar, chaos::sigma_star_classical(p_bar), q.sigma_bar, sq};
}

std::vector<double> row_rates(Point& pt) {
    const auto& c = pt.c;
    const auto& m = pt.m;
    const int n = c.numerics.n_periods;
    const tls::TlsInit e{0.0, 0.0}, g{kPi, 0.0};
    const auto s = three_model(pt, e);
    const auto up = tls::evolve_coupled_quantum(m, basis_size(c), g, n_g_list(c), n, 1,
                                                c.numerics.steps_per_period, pt.threads);
    const RbmChoice r = rbm_choice(c, m);
    const auto fgr = rbm::fgr_rates(m.g_t, m.omega_q_t, r.D, r.p_bar);
    return {m.omega_q_t,         fitted_gamma(up.series, n), fitted_gamma(s.qm, n),
            fitted_gamma(s.cm, n), fitted_gamma(s.rbm, n),   fgr.gamma_down,
            tls::resonance_flag(m.omega_q_t) ? 1.0 : 0.0};
}

std::vector<double> row_plateau(Point& pt) {
    const auto& c = pt.c;
    const auto& m = pt.m;
    const auto ng = n_g_list(c);
    ModelParams first = m;
    first.n_g = ng.front();
    const auto b = quantum::build_basis(first, c.numerics.D, c.numerics.d);
    pt.conv = coupled_convergence(tls::converge_coupled(b, m.xi_d, m.omega_q_t, m.g_t, c.numerics.steps_per_period,
                                                        quantum::kDefaultPeriodTolerance, pt.threads));
    const auto p = tls::plateau_floquet(m, basis_size(c), {c.tls_theta, c.tls_phi}, ng, 0.3,
                                        c.numerics.steps_per_period, pt.threads);
    pt.conv["max_unitarity_deviation"] = p.max_unitarity_deviation;
    return {m.g_t, p.z_ss_dressed2, p.z_ss_l_alpha, p.z_ss_uniform, p.z_ss_var, p.n_chaotic, p.n_chaotic_floquet_ref};
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("io-error", "cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw Error("io-error", "write failed for '" + path.string() + "'");
}

}  // namespace

std::string schema_help(const std::string& experiment) {
    const auto it = schemas().find(experiment);
    return it == schemas().end() ? std::string() : it->second;
}

RunResult run(const ExperimentConfig& c, unsigned threads) {
    const std::string& e = c.experiment;
    std::vector<double> sweep_values;
    if (c.sweep) sweep_values = c.sweep->values();
    json conv = json::array();
    Tables out;

    auto point_model = [&](double v) {
        ModelParams m = c.model;
        if (c.sweep && c.sweep->variable != "omega") set_variable(m, c.sweep->variable, v);
        validate(m);
        return m;
    };

    if (e == "chaotic-layer" || e == "sigma-p" || e == "rates" || e == "plateau") {
        static const std::map<std::string, std::pair<std::string, std::vector<std::string>>> axis_tables = {
            {"chaotic-layer", {"chaotic_layer", {"xi_d", "m_bar", "p_bar", "near_tangent"}}},
            {"sigma-p",
             {"sigma_p", {"xi_d", "sigma_p_classical", "sigma_star_C", "sigma_p_quantum", "sigma_star_Q"}}},
            {"rates",
             {"rates",
              {"omega_q_t", "gamma_qm_up", "gamma_qm_down", "gamma_cm", "gamma_rbm", "gamma_fgr",
               "resonance_flag"}}},
            {"plateau",
             {"plateau",
              {"g_t", "z_ss_dressed2", "z_ss_l_alpha", "z_ss_uniform", "z_ss_var", "n_chaotic",
               "n_chaotic_floquet_ref"}}},
        };
        const auto& spec = axis_tables.at(e);
        std::vector<bool> ints(spec.second.size(), false);
        if (e == "chaotic-layer") ints = {false, true, false, true};
        if (e == "rates") ints.back() = true;
        Table main(spec.first, spec.second, ints);
        Table res("chaotic_layer_resonances", {"xi_d", "m", "width", "upper_at_zero", "lower_at_zero"},
                  {false, true});
        for (double v : sweep_values) {
            json pc = json::object();
            Point pt{c, point_model(v), threads, pc};
            if (e == "chaotic-layer") main.add(row_chaotic_layer(pt, res));
            else if (e == "sigma-p") main.add(row_sigma_p(pt));
            else if (e == "rates") main.add(row_rates(pt));
            else main.add(row_plateau(pt));
            if (!pc.empty()) conv.push_back({{c.sweep->variable, v}, {"checks", pc}});
        }
        out.push_back(main);
        if (e == "chaotic-layer") out.push_back(res);
    } else if (e == "rbm-psd") {
        const RbmChoice r = rbm_choice(c, c.model);
        Table t("rbm_psd", {"omega", "psd_series", "psd_paper_two_term"});
        for (double w : sweep_values)
            t.add({w, rbm::psd(r.D, r.p_bar, w, kPsdTerms), rbm::psd_paper_two_term(r.D, r.p_bar, w)});
        out.push_back(t);
    } else {
        using Body = Tables (*)(Point&);
        static const std::map<std::string, Body> bodies = {
            {"poincare", run_poincare}, {"pdist", run_pdist},     {"crossings", run_crossings},
            {"relax", run_relax},       {"dephase", run_dephase}, {"rmatrix", run_rmatrix},
            {"rbm-path", run_rbm_path}, {"floquet-spectrum", run_floquet_spectrum},
        };
        const Body body = bodies.at(e);
        if (!c.sweep) {
            json pc = json::object();
            Point pt{c, c.model, threads, pc};
            out = body(pt);
            if (!pc.empty()) conv.push_back({{"checks", pc}});
        } else {
            // Each table gains a leading column holding the sweep value.
            for (double v : sweep_values) {
                json pc = json::object();
                Point pt{c, point_model(v), threads, pc};
                Tables part = body(pt);
                if (out.empty()) {
                    for (const auto& t : part) {
                        std::vector<std::string> cols{c.sweep->variable};
                        cols.insert(cols.end(), t.columns.begin(), t.columns.end());
                        std::vector<bool> ints{false};
                        ints.insert(ints.end(), t.integer.begin(), t.integer.end());
                        out.emplace_back(t.name, cols, ints);
                    }
                }
                for (std::size_t k = 0; k < part.size(); ++k)
                    for (auto& row : part[k].rows) {
                        row.insert(row.begin(), v);
                        out[k].add(std::move(row));
                    }
                if (!pc.empty()) conv.push_back({{c.sweep->variable, v}, {"checks", pc}});
            }
        }
    }

    const std::filesystem::path dir(c.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error("io-error", "cannot create output directory '" + c.output_dir + "'");

    RunResult result;
    for (const auto& t : out) {
        const std::string file = t.name + ".csv";
        write_file(dir / file, to_csv(t));
        result.files.push_back(file);
    }
    json resolved = c.to_json();
    resolved.erase("output_dir");
    result.manifest = {{"software", "transmon-lab"},
                       {"version", kVersion},
                       {"seed", c.seed},
                       {"config", resolved},
                       {"model_resolved",
                        {{"lambda", c.model.lambda},
                         {"xi_d", c.model.xi_d},
                         {"hbar_eff", c.model.hbar_eff},
                         {"omega_q_t", c.model.omega_q_t},
                         {"g_t", c.model.g_t},
                         {"n_g", c.model.n_g}}},
                       {"convergence", conv},
                       {"files", result.files}};
    write_file(dir / "manifest.json", result.manifest.dump(2) + "\n");
    return result;
}

}  // namespace tlab::cli
