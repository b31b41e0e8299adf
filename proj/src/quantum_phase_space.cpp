#include <algorithm>
#include <cmath>
#include <limits>

#include "tlab/errors.hpp"
#include "tlab/quantum/phase_space.hpp"

namespace tlab::quantum {

namespace {

using cd = std::complex<double>;

// Normalized kernel magnitudes over the charge grid for centre p0.
Eigen::VectorXd kernel_row(const TransmonBasis& b, double p0, double sigma_p) {
    const int n = b.charge.size();
    Eigen::VectorXd g(n);
    for (int i = 0; i < n; ++i) {
        const double x = b.params.hbar_eff * b.charge.charge(i) - p0;
        g(i) = std::exp(-x * x / (4.0 * sigma_p * sigma_p));
    }
    const double norm = g.norm();
    return norm > 0 ? Eigen::VectorXd(g / norm) : g;
}

}  // namespace

double husimi_kernel_sigma_p(const ModelParams& m) {
    return std::sqrt(m.hbar_eff * std::sqrt(m.lambda) / 2.0);
}

Eigen::MatrixXd husimi(const TransmonBasis& b, const Eigen::VectorXcd& state,
                       const std::vector<double>& theta_grid, const std::vector<double>& p_grid) {
    const Eigen::VectorXcd psi = to_charge(b, state);
    const double sp = husimi_kernel_sigma_p(b.params);
    const int n = b.charge.size();
    Eigen::MatrixXd Q(theta_grid.size(), p_grid.size());
    // Phase factors e^{i n theta} for every grid angle.
    Eigen::MatrixXcd phases(theta_grid.size(), n);
    for (std::size_t i = 0; i < theta_grid.size(); ++i)
        for (int k = 0; k < n; ++k) phases(i, k) = std::polar(1.0, b.charge.charge(k) * theta_grid[i]);
    for (std::size_t j = 0; j < p_grid.size(); ++j) {
        const Eigen::VectorXd g = kernel_row(b, p_grid[j], sp);
        const Eigen::VectorXcd w = g.cast<cd>().cwiseProduct(psi);
        Q.col(j) = (phases * w).cwiseAbs2();
    }
    return Q;
}

HusimiSampler::HusimiSampler(const TransmonBasis& b, const Eigen::VectorXcd& state, int n_theta,
                             int n_p) {
    if (n_theta < 2 || n_p < 2) throw InvalidParameter("Husimi sampling grid too small");
    const Eigen::VectorXcd psi = to_charge(b, state);
    const double sp = husimi_kernel_sigma_p(b.params);
    int lo = b.charge.size(), hi = -1;
    for (int i = 0; i < b.charge.size(); ++i)
        if (std::norm(psi(i)) > 1e-14) lo = std::min(lo, i), hi = std::max(hi, i);
    if (hi < 0) throw InvalidParameter("cannot sample the Husimi function of a zero state");
    const double hb = b.params.hbar_eff;
    const double p_lo = hb * b.charge.charge(lo) - 6 * sp, p_hi = hb * b.charge.charge(hi) + 6 * sp;
    dtheta_ = kPeriod / n_theta;
    dp_ = (p_hi - p_lo) / n_p;
    for (int i = 0; i < n_theta; ++i) theta_.push_back(-kPi + (i + 0.5) * dtheta_);
    for (int j = 0; j < n_p; ++j) p_.push_back(p_lo + (j + 0.5) * dp_);
    q_ = husimi(b, state, theta_, p_);
    q_max_ = q_.maxCoeff();
}

pendulum::PhasePoint HusimiSampler::operator()(std::size_t, Rng& rng) const {
    const auto nt = static_cast<double>(theta_.size()), np = static_cast<double>(p_.size());
    for (;;) {
        const auto i = static_cast<Eigen::Index>(Normal::uniform(rng) * nt);
        const auto j = static_cast<Eigen::Index>(Normal::uniform(rng) * np);
        if (Normal::uniform(rng) * q_max_ < q_(i, j)) {
            pendulum::PhasePoint s;
            s.theta = theta_[i] + (Normal::uniform(rng) - 0.5) * dtheta_;
            s.p = p_[j] + (Normal::uniform(rng) - 0.5) * dp_;
            return s;
        }
    }
}

std::vector<pendulum::PhasePoint> sample_husimi(const TransmonBasis& b, const Eigen::VectorXcd& state,
                                                std::size_t n_samples, std::uint64_t seed) {
    const HusimiSampler s(b, state);
    std::vector<pendulum::PhasePoint> out;
    out.reserve(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        Rng rng = make_rng(seed, i);
        out.push_back(s(i, rng));
    }
    return out;
}

Eigen::VectorXd momentum_distribution(const std::vector<TransmonBasis>& bases,
                                      const std::vector<Eigen::VectorXcd>& states) {
    if (bases.empty() || bases.size() != states.size())
        throw InvalidParameter("momentum_distribution needs one basis per state");
    const int n = bases.front().charge.size();
    Eigen::VectorXd P = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (bases[i].charge.size() != n) throw InvalidParameter("bases must share the charge cutoff");
        P += to_charge(bases[i], states[i]).cwiseAbs2();
    }
    return P / static_cast<double>(states.size());
}

LocalizationFit localization_fit(const Eigen::VectorXd& P, double n_exclude, double floor) {
    const int D = static_cast<int>(P.size() - 1) / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    LocalizationFit f;
    f.n_min = D;
    for (int i = 0; i < P.size(); ++i) {
        const int n = std::abs(i - D);
        if (P(i) <= floor || n < n_exclude) continue;
        const double y = std::log(P(i));
        sx += n, sy += y, sxx += double(n) * n, sxy += n * y;
        ++f.n_points;
        f.n_min = std::min(f.n_min, n);
        f.n_max = std::max(f.n_max, n);
    }
    if (f.n_points < 3 || f.n_max == f.n_min) throw InsufficientData("too few points for a localization fit");
    const double m = f.n_points;
    f.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    f.intercept = (sy - f.slope * sx) / m;
    f.l_fit = f.slope < 0 ? -1.0 / f.slope : std::numeric_limits<double>::infinity();
    return f;
}

std::pair<double, double> momentum_moments(const Eigen::VectorXd& P, double hbar_eff) {
    const int D = static_cast<int>(P.size() - 1) / 2;
    double m1 = 0, m2 = 0, tot = P.sum();
    for (int i = 0; i < P.size(); ++i) {
        const double p = hbar_eff * (i - D);
        m1 += P(i) * p, m2 += P(i) * p * p;
    }
    m1 /= tot, m2 /= tot;
    return {m1, std::sqrt(std::max(0.0, m2 - m1 * m1))};
}

}  // namespace tlab::quantum
