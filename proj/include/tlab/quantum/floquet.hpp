#pragma once

#include <Eigen/Dense>

#include "tlab/quantum/propagator.hpp"

namespace tlab::quantum {

inline constexpr double kUnitarityTolerance = 1e-8;

// U(T) phi_a = exp(-i 2 pi eps_a) phi_a, eps_a in (-1/2, 1/2], sorted ascending.
struct FloquetDecomposition {
    Eigen::VectorXd quasienergies;
    Eigen::MatrixXcd modes;  // columns, at t = 0
    double period = kPeriod;
    double unitarity_deviation = 0.0;
    ModelParams params;
};

double fold_quasienergy(double eps);

// Schur form of a unitary; throws AccuracyError when U deviates from
// unitarity by more than kUnitarityTolerance.
FloquetDecomposition floquet_from_monodromy(const Eigen::MatrixXcd& U);

FloquetDecomposition floquet(const TransmonBasis& basis, double xi_d,
                             int steps_per_period = kDefaultStepsPerPeriod, unsigned threads = 1);

// sum_j |<ref_j|mode>|^4 for orthonormal reference columns.
double ipr(const Eigen::VectorXcd& mode, const Eigen::MatrixXcd& reference);

}  // namespace tlab::quantum
