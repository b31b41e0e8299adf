#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "tlab/errors.hpp"
#include "tlab/quantum/floquet.hpp"

namespace tlab::quantum {

double fold_quasienergy(double eps) {
    double e = eps - std::round(eps);
    if (e <= -0.5) e += 1.0;
    return e;
}

FloquetDecomposition floquet_from_monodromy(const Eigen::MatrixXcd& U) {
    FloquetDecomposition f;
    f.unitarity_deviation = unitarity_deviation(U);
    if (f.unitarity_deviation > kUnitarityTolerance)
        throw AccuracyError("one-period propagator is not unitary (deviation " +
                            std::to_string(f.unitarity_deviation) + ")");
    // For a normal matrix the Schur factor is diagonal and its unitary factor
    // holds orthonormal eigenvectors, also inside degenerate subspaces.
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(U);
    if (schur.info() != Eigen::Success) throw AccuracyError("Schur decomposition failed");
    const auto& T = schur.matrixT();
    const Eigen::Index n = U.rows();
    Eigen::VectorXd eps(n);
    for (Eigen::Index i = 0; i < n; ++i) eps(i) = fold_quasienergy(-std::arg(T(i, i)) / kPeriod);
    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return eps(a) < eps(b); });
    f.quasienergies.resize(n);
    f.modes.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        f.quasienergies(i) = eps(order[i]);
        Eigen::VectorXcd v = schur.matrixU().col(order[i]);
        // Gauge: largest component real and positive.
        Eigen::Index imax;
        v.cwiseAbs().maxCoeff(&imax);
        v *= std::polar(1.0, -std::arg(v(imax)));
        f.modes.col(i) = v;
    }
    return f;
}

FloquetDecomposition floquet(const TransmonBasis& basis, double xi_d, int steps_per_period,
                             unsigned threads) {
    auto f = floquet_from_monodromy(PeriodPropagator(basis, xi_d, steps_per_period, threads).monodromy());
    f.params = basis.params;
    f.params.xi_d = xi_d;
    return f;
}

double ipr(const Eigen::VectorXcd& mode, const Eigen::MatrixXcd& reference) {
    const Eigen::VectorXcd c = reference.adjoint() * mode;
    return c.cwiseAbs2().cwiseAbs2().sum();
}

}  // namespace tlab::quantum
