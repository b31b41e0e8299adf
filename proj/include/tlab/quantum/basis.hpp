#pragma once

#include <Eigen/Dense>

#include "tlab/params.hpp"

namespace tlab::quantum {

struct ChargeBasis {
    int D = 200;
    double n_g = 0.0;

    int size() const { return 2 * D + 1; }
    int charge(int index) const { return index - D; }
};

// Lowest d eigenstates of hbar (n - n_g)^2 / 2 - (lambda / hbar) cos(phi)
// with e^{i phi}|n> = |n+1>, truncated at |n| <= D. Operators are projected
// onto the retained states.
struct TransmonBasis {
    ChargeBasis charge;
    ModelParams params;
    int d = 0;
    Eigen::VectorXd levels;         // generator eigenvalues, energy / hbar_eff
    Eigen::MatrixXd transform;      // (2D+1) x d, charge amplitudes of each state
    Eigen::MatrixXd n_op;           // n
    Eigen::MatrixXd cos_op;         // cos(phi)
    Eigen::MatrixXd shift_antisym;  // (e^{i phi} - e^{-i phi}) / 2 = i sin(phi)

    Eigen::VectorXd energies() const { return params.hbar_eff * levels; }
    Eigen::MatrixXcd sin_op() const;
};

TransmonBasis build_basis(const ModelParams& params, int D, int d);

struct BasisSize {
    int D = 200;
    int d = 100;
};

// D and d scaled as 1/hbar_eff from (200, 100) at hbar_eff = 0.16.
BasisSize default_basis_size(double hbar_eff);

// |<psi|[n, cos phi] - i sin phi|psi>| with the projected operators.
double commutator_check(const TransmonBasis& basis, const Eigen::VectorXcd& state);

// Charge-basis amplitudes of a state given in the eigenbasis.
Eigen::VectorXcd to_charge(const TransmonBasis& basis, const Eigen::VectorXcd& state);

struct WaveState {
    Eigen::VectorXcd amplitudes;
    double t = 0.0;
    // True when amplitudes are ordered [g block, e block] over the TLS.
    bool with_tls = false;

    double norm() const { return amplitudes.norm(); }
};

WaveState eigenstate(const TransmonBasis& basis, int k);

}  // namespace tlab::quantum
