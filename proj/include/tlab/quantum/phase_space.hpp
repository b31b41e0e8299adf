#pragma once

#include <vector>

#include <Eigen/Dense>

#include "tlab/pendulum.hpp"
#include "tlab/quantum/basis.hpp"

namespace tlab::quantum {

// Coherent-state kernel: Gaussian charge amplitudes with momentum variance
// hbar sqrt(lambda) / 2 and phase exp(-i n theta0), p = hbar n.
double husimi_kernel_sigma_p(const ModelParams& params);

// Q(theta_i, p_j) = |<theta_i, p_j|psi>|^2 for a state in the eigenbasis.
// With this kernel the integral of Q over one theta period and all p is
// 2 pi hbar_eff.
Eigen::MatrixXd husimi(const TransmonBasis& basis, const Eigen::VectorXcd& state,
                       const std::vector<double>& theta_grid, const std::vector<double>& p_grid);

// Rejection sampler on a fixed grid covering the state's Q. Each accepted
// point is drawn uniformly inside its grid cell.
class HusimiSampler {
public:
    HusimiSampler(const TransmonBasis& basis, const Eigen::VectorXcd& state, int n_theta = 256,
                  int n_p = 256);
    pendulum::PhasePoint operator()(std::size_t index, Rng& rng) const;

    const std::vector<double>& theta_grid() const { return theta_; }
    const std::vector<double>& p_grid() const { return p_; }
    const Eigen::MatrixXd& q() const { return q_; }

private:
    std::vector<double> theta_, p_;
    Eigen::MatrixXd q_;
    double q_max_ = 0.0;
    double dtheta_ = 0.0, dp_ = 0.0;
};

std::vector<pendulum::PhasePoint> sample_husimi(const TransmonBasis& basis,
                                                const Eigen::VectorXcd& state,
                                                std::size_t n_samples, std::uint64_t seed);

// P(n), n = -D..D, averaged over the given states (one per n_g value, all
// on the same charge cutoff).
Eigen::VectorXd momentum_distribution(const std::vector<TransmonBasis>& bases,
                                      const std::vector<Eigen::VectorXcd>& states);

struct LocalizationFit {
    double l_fit = 0.0;
    double slope = 0.0;
    double intercept = 0.0;
    int n_points = 0;
    int n_min = 0;
    int n_max = 0;
};

// Least squares of log P(n) against |n| over P > floor and |n| >= n_exclude.
LocalizationFit localization_fit(const Eigen::VectorXd& P, double n_exclude, double floor = 1e-8);

// Mean and standard deviation of p = hbar n from P(n).
std::pair<double, double> momentum_moments(const Eigen::VectorXd& P, double hbar_eff);

}  // namespace tlab::quantum
