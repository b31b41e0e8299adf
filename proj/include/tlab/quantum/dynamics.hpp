#pragma once

#include <vector>

#include <Eigen/Dense>

#include "tlab/quantum/propagator.hpp"

namespace tlab::quantum {

// Uniform grid of `count` values over [0, 0.5], endpoints included.
std::vector<double> offset_charge_grid(int count);

struct QuantumMomentumRun {
    std::vector<double> t;       // stroboscopic times
    std::vector<double> mean_p;  // n_g-averaged <p>
    std::vector<double> std_p;   // sqrt(E[<p^2>] - E[<p>]^2)
    double sigma_bar = 0.0;      // time average of std_p over the final half
    Eigen::VectorXd P_final;     // n_g-averaged P(n) at the last period
    double max_unitarity_deviation = 0.0;
};

// Transmon ground state evolved stroboscopically for each offset charge.
QuantumMomentumRun quantum_momentum_run(const ModelParams& params, const std::vector<double>& n_g,
                                        const BasisSize& size, int n_periods,
                                        int steps_per_period = kDefaultStepsPerPeriod,
                                        unsigned threads = 1);

struct RMatrixRow {
    double n_g = 0.0;
    int alpha = 0;
    int beta = 0;
    int k = 0;
    double delta = 0.0;
    double r_sq = 0.0;
};

// P_abk = (1/n_t) sum_j e^{-i k t_j} <phi_a(t_j)|p|phi_b(t_j)> over the
// periodic modes phi(t) = e^{i eps t} U(t) phi(0), and R = <phi_b(0)|0> P.
// Each eps is taken as the representative closest to the mode's mean
// undriven energy, so undriven modes are time independent.
// Rows with |R|^2 below min_r_sq are dropped.
std::vector<RMatrixRow> weighted_matrix_elements(const TransmonBasis& basis, double xi_d, int k_max,
                                                 int n_t, int steps_per_period = kDefaultStepsPerPeriod,
                                                 double min_r_sq = 0.0, unsigned threads = 1);

// Raw P_abk as a (2 k_max + 1)-vector of d x d matrices, index k + k_max.
// quasienergies receives the unfolded representatives.
std::vector<Eigen::MatrixXcd> floquet_momentum_harmonics(const TransmonBasis& basis, double xi_d,
                                                         int k_max, int n_t, int steps_per_period,
                                                         Eigen::VectorXd* quasienergies = nullptr,
                                                         Eigen::MatrixXcd* modes = nullptr,
                                                         unsigned threads = 1);

struct RSymmetry {
    double peak_center = 0.0;  // centre of the heaviest 0.1-wide bin
    double total = 0.0;
    // Mirrored bands [lo, lo + 0.25) and (-lo - 0.25, -lo], lo = 0.05 + 0.25 i.
    std::vector<double> band_lo;
    std::vector<double> positive;
    std::vector<double> negative;
    double max_relative_mismatch = 0.0;  // over bands holding >= 1% of the total
};

RSymmetry r_matrix_symmetry(const std::vector<RMatrixRow>& rows);

}  // namespace tlab::quantum
