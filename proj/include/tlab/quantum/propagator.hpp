#pragma once

#include <vector>

#include <Eigen/Dense>

#include "tlab/quantum/basis.hpp"

namespace tlab::quantum {

inline constexpr int kDefaultStepsPerPeriod = 256;
inline constexpr double kDefaultPeriodTolerance = 1e-5;

// Generator (1/hbar) H(t) in the eigenbasis at drive phase a = xi_d sin t:
// diag(levels) - (lambda/hbar)[(cos a - 1) cos(phi) + sin a sin(phi)].
Eigen::MatrixXcd generator(const TransmonBasis& basis, double a);

// exp(-i h X) for Hermitian X.
Eigen::MatrixXcd expm_hermitian(const Eigen::MatrixXcd& X, double h);

// One-period evolution split into fourth-order commutator-free Magnus
// steps. Step k maps psi(k h) to psi((k+1) h), h = T / steps.
class PeriodPropagator {
public:
    PeriodPropagator(const TransmonBasis& basis, double xi_d, int steps_per_period,
                     unsigned threads = 1);

    int steps() const { return static_cast<int>(steps_.size()); }
    double step_size() const { return kPeriod / steps(); }
    double xi_d() const { return xi_d_; }
    int dim() const { return static_cast<int>(steps_.front().rows()); }
    const Eigen::MatrixXcd& step(int k) const { return steps_[k]; }

    Eigen::MatrixXcd monodromy() const;

    // U(j T / s) for j = 1..s; s must divide the step count.
    std::vector<Eigen::MatrixXcd> sampled(int samples_per_period) const;

    // Re-expresses every step matrix in another orthonormal basis:
    // step -> W^T step W for real orthogonal W.
    void change_basis(const Eigen::MatrixXd& W);

private:
    double xi_d_;
    std::vector<Eigen::MatrixXcd> steps_;
};

// max |U_M(T) - U_2M(T)| entrywise.
double doubling_error(const TransmonBasis& basis, double xi_d, int steps_per_period,
                      unsigned threads = 1);

struct PeriodConvergence {
    int steps_per_period = 0;
    std::vector<int> tried;
    std::vector<double> errors;
    double tolerance = 0.0;
};

// Doubles the step count (at most twice) until doubling_error <= tol.
// Throws AccuracyError otherwise.
PeriodConvergence converge_steps(const TransmonBasis& basis, double xi_d, int steps_per_period,
                                 double tol = kDefaultPeriodTolerance, unsigned threads = 1);

// Max entrywise deviation of U^dagger U from the identity.
double unitarity_deviation(const Eigen::MatrixXcd& U);

// Evolves a state from t0 to t1 (t1 >= t0) with CF4 steps of size close to
// T / steps_per_period. Convergence is asserted by comparing with twice the
// steps (up to two doublings, tolerance on the state difference norm).
WaveState propagate(const TransmonBasis& basis, double xi_d, const WaveState& state, double t1,
                    int steps_per_period = kDefaultStepsPerPeriod, double tol = 1e-7);

// One fixed-step pass without the convergence check.
Eigen::VectorXcd propagate_fixed(const TransmonBasis& basis, double xi_d,
                                 const Eigen::VectorXcd& psi, double t0, double t1, int n_steps);

// Lab-frame generator diag(levels) - xi_d cos(t) n, used only to check
// stroboscopic frame equivalence.
Eigen::VectorXcd propagate_lab_frame(const TransmonBasis& basis, double xi_d,
                                     const Eigen::VectorXcd& psi, double t0, double t1,
                                     int n_steps);

}  // namespace tlab::quantum
