#include <cmath>

#include "tlab/errors.hpp"
#include "tlab/quantum/basis.hpp"

namespace tlab::quantum {

Eigen::MatrixXcd TransmonBasis::sin_op() const {
    return std::complex<double>(0.0, -1.0) * shift_antisym.cast<std::complex<double>>();
}

TransmonBasis build_basis(const ModelParams& params, int D, int d) {
    validate(params);
    if (D < 1) throw InvalidParameter("D must be >= 1");
    if (d < 1 || d > 2 * D + 1) throw InvalidParameter("d must be in [1, 2D+1]");
    const int n = 2 * D + 1;
    const double hbar = params.hbar_eff;
    const double n_g = wrap_offset_charge(params.n_g);

    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd shift = Eigen::MatrixXd::Zero(n, n);  // e^{i phi}
    for (int i = 0; i < n; ++i) {
        const double q = (i - D) - n_g;
        H(i, i) = 0.5 * hbar * q * q;
        if (i + 1 < n) shift(i + 1, i) = 1.0;
    }
    const Eigen::MatrixXd cos_full = 0.5 * (shift + shift.transpose());
    const Eigen::MatrixXd anti_full = 0.5 * (shift - shift.transpose());
    H -= params.lambda / hbar * cos_full;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    if (es.info() != Eigen::Success) throw AccuracyError("charge-basis diagonalization failed");

    TransmonBasis b;
    b.charge = {D, n_g};
    b.params = params;
    b.params.n_g = n_g;
    b.d = d;
    b.levels = es.eigenvalues().head(d);
    b.transform = es.eigenvectors().leftCols(d);
    // Fix the sign of each eigenvector so the largest component is positive.
    for (int k = 0; k < d; ++k) {
        Eigen::Index imax;
        b.transform.col(k).cwiseAbs().maxCoeff(&imax);
        if (b.transform(imax, k) < 0) b.transform.col(k) *= -1.0;
    }
    Eigen::VectorXd charges(n);
    for (int i = 0; i < n; ++i) charges(i) = i - D;
    b.n_op = b.transform.transpose() * charges.asDiagonal() * b.transform;
    b.cos_op = b.transform.transpose() * cos_full * b.transform;
    b.shift_antisym = b.transform.transpose() * anti_full * b.transform;
    return b;
}

BasisSize default_basis_size(double hbar_eff) {
    if (!(hbar_eff > 0)) throw InvalidParameter("hbar_eff must be positive");
    BasisSize s;
    s.D = std::max(1, static_cast<int>(std::lround(200.0 * 0.16 / hbar_eff)));
    s.d = std::min(2 * s.D + 1, std::max(1, static_cast<int>(std::lround(100.0 * 0.16 / hbar_eff))));
    return s;
}

double commutator_check(const TransmonBasis& b, const Eigen::VectorXcd& state) {
    if (state.size() != b.d) throw InvalidParameter("state dimension does not match basis");
    const Eigen::MatrixXd X = b.n_op * b.cos_op - b.cos_op * b.n_op - b.shift_antisym;
    return std::abs(state.dot(X.cast<std::complex<double>>() * state));
}

Eigen::VectorXcd to_charge(const TransmonBasis& b, const Eigen::VectorXcd& state) {
    return b.transform.cast<std::complex<double>>() * state;
}

WaveState eigenstate(const TransmonBasis& b, int k) {
    if (k < 0 || k >= b.d) throw InvalidParameter("eigenstate index out of range");
    WaveState w;
    w.amplitudes = Eigen::VectorXcd::Zero(b.d);
    w.amplitudes(k) = 1.0;
    return w;
}

}  // namespace tlab::quantum
