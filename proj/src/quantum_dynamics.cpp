#include <algorithm>
#include <cmath>

#include "tlab/errors.hpp"
#include "tlab/parallel.hpp"
#include "tlab/quantum/dynamics.hpp"
#include "tlab/quantum/floquet.hpp"

namespace tlab::quantum {

namespace {
using cd = std::complex<double>;
}

std::vector<double> offset_charge_grid(int count) {
    if (count < 1) throw InvalidParameter("n_g count must be >= 1");
    if (count == 1) return {0.0};
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i) g[i] = 0.5 * i / (count - 1);
    return g;
}

QuantumMomentumRun quantum_momentum_run(const ModelParams& params, const std::vector<double>& n_g,
                                        const BasisSize& size, int n_periods, int steps,
                                        unsigned threads) {
    if (n_g.empty()) throw InvalidParameter("empty n_g list");
    if (n_periods < 1) throw InvalidParameter("n_periods must be >= 1");
    const std::size_t m = n_g.size();
    const double hb = params.hbar_eff;
    std::vector<Eigen::VectorXd> m1(m), m2(m);
    std::vector<Eigen::VectorXd> finals(m);
    std::vector<double> dev(m);
    parallel_for(m, threads, [&](std::size_t i) {
        ModelParams p = params;
        p.n_g = n_g[i];
        const TransmonBasis b = build_basis(p, size.D, size.d);
        const Eigen::MatrixXcd U = PeriodPropagator(b, params.xi_d, steps).monodromy();
        dev[i] = unitarity_deviation(U);
        const Eigen::MatrixXd P = hb * b.n_op;
        const Eigen::MatrixXd P2 = P * P;
        m1[i].resize(n_periods + 1);
        m2[i].resize(n_periods + 1);
        Eigen::VectorXcd psi = eigenstate(b, 0).amplitudes;
        for (int n = 0; n <= n_periods; ++n) {
            if (n > 0) psi = U * psi;
            m1[i](n) = psi.dot(P.cast<cd>() * psi).real();
            m2[i](n) = psi.dot(P2.cast<cd>() * psi).real();
        }
        finals[i] = to_charge(b, psi).cwiseAbs2();
    });
    QuantumMomentumRun r;
    r.max_unitarity_deviation = *std::max_element(dev.begin(), dev.end());
    Eigen::VectorXd a1 = Eigen::VectorXd::Zero(n_periods + 1), a2 = a1;
    r.P_final = Eigen::VectorXd::Zero(finals.front().size());
    for (std::size_t i = 0; i < m; ++i) {
        a1 += m1[i];
        a2 += m2[i];
        r.P_final += finals[i];
    }
    a1 /= double(m);
    a2 /= double(m);
    r.P_final /= double(m);
    for (int n = 0; n <= n_periods; ++n) {
        r.t.push_back(kPeriod * n);
        r.mean_p.push_back(a1(n));
        r.std_p.push_back(std::sqrt(std::max(0.0, a2(n) - a1(n) * a1(n))));
    }
    const int first = (n_periods + 1) / 2;
    double acc = 0.0;
    for (int n = first; n <= n_periods; ++n) acc += r.std_p[n];
    r.sigma_bar = acc / (n_periods + 1 - first);
    return r;
}

std::vector<Eigen::MatrixXcd> floquet_momentum_harmonics(const TransmonBasis& b, double xi_d,
                                                         int k_max, int n_t, int steps,
                                                         Eigen::VectorXd* quasienergies,
                                                         Eigen::MatrixXcd* modes, unsigned threads) {
    if (k_max < 0) throw InvalidParameter("k_max must be non-negative");
    if (n_t < 4 * k_max || n_t < 1) throw AliasingError("n_t must be at least 4 k_max");
    if (steps % n_t != 0) throw InvalidParameter("n_t must divide steps_per_period");
    const PeriodPropagator prop(b, xi_d, steps, threads);
    std::vector<Eigen::MatrixXcd> Us = prop.sampled(n_t);
    const FloquetDecomposition f = floquet_from_monodromy(Us.back());
    // U(t_j) for t_j = j T / n_t, j = 0..n_t-1.
    Us.pop_back();
    Us.insert(Us.begin(), Eigen::MatrixXcd::Identity(b.d, b.d));
    Eigen::VectorXd eps = f.quasienergies;
    for (int a = 0; a < b.d; ++a) {
        const double mean = f.modes.col(a).cwiseAbs2().dot(b.levels);
        eps(a) += std::round(mean - eps(a));
    }
    const Eigen::MatrixXcd P = (b.params.hbar_eff * b.n_op).cast<cd>();
    std::vector<Eigen::MatrixXcd> out(2 * k_max + 1, Eigen::MatrixXcd::Zero(b.d, b.d));
    for (int j = 0; j < n_t; ++j) {
        const double t = kPeriod * j / n_t;
        Eigen::VectorXcd rot(b.d);
        for (int a = 0; a < b.d; ++a) rot(a) = std::polar(1.0, eps(a) * t);
        const Eigen::MatrixXcd Phi = Us[j] * f.modes * rot.asDiagonal();
        const Eigen::MatrixXcd M = Phi.adjoint() * P * Phi;
        for (int k = -k_max; k <= k_max; ++k) out[k + k_max] += std::polar(1.0 / n_t, -k * t) * M;
    }
    if (quasienergies) *quasienergies = eps;
    if (modes) *modes = f.modes;
    return out;
}

std::vector<RMatrixRow> weighted_matrix_elements(const TransmonBasis& b, double xi_d, int k_max,
                                                 int n_t, int steps, double min_r_sq,
                                                 unsigned threads) {
    Eigen::VectorXd eps;
    Eigen::MatrixXcd modes;
    const auto Pk = floquet_momentum_harmonics(b, xi_d, k_max, n_t, steps, &eps, &modes, threads);
    std::vector<RMatrixRow> rows;
    for (int a = 0; a < b.d; ++a)
        for (int c = 0; c < b.d; ++c) {
            const cd w = std::conj(modes(0, c));
            for (int k = -k_max; k <= k_max; ++k) {
                const double r2 = std::norm(w * Pk[k + k_max](a, c));
                if (r2 < min_r_sq) continue;
                rows.push_back({b.params.n_g, a, c, k, eps(a) - eps(c) + k, r2});
            }
        }
    return rows;
}

RSymmetry r_matrix_symmetry(const std::vector<RMatrixRow>& rows) {
    RSymmetry s;
    if (rows.empty()) throw InsufficientData("no R-matrix rows");
    double dmax = 0.0;
    for (const auto& r : rows) {
        s.total += r.r_sq;
        dmax = std::max(dmax, std::abs(r.delta));
    }
    // 0.1-wide bins centred on multiples of 0.1.
    const int nb = static_cast<int>(std::ceil(dmax / 0.1)) + 1;
    std::vector<double> bins(2 * nb + 1, 0.0);
    for (const auto& r : rows) bins[static_cast<int>(std::lround(r.delta / 0.1)) + nb] += r.r_sq;
    const auto it = std::max_element(bins.begin(), bins.end());
    s.peak_center = 0.1 * static_cast<int>(it - bins.begin() - nb);

    for (double lo = 0.05; lo < dmax; lo += 0.25) {
        double pos = 0, neg = 0;
        for (const auto& r : rows) {
            if (r.delta >= lo && r.delta < lo + 0.25) pos += r.r_sq;
            if (r.delta <= -lo && r.delta > -lo - 0.25) neg += r.r_sq;
        }
        s.band_lo.push_back(lo);
        s.positive.push_back(pos);
        s.negative.push_back(neg);
        if (std::max(pos, neg) >= 0.01 * s.total)
            s.max_relative_mismatch =
                std::max(s.max_relative_mismatch, std::abs(pos - neg) / (0.5 * (pos + neg)));
    }
    return s;
}

}  // namespace tlab::quantum
