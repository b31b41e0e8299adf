#include <cmath>
#include <complex>

#include "tlab/errors.hpp"
#include "tlab/parallel.hpp"
#include "tlab/quantum/propagator.hpp"

namespace tlab::quantum {

namespace {

using cd = std::complex<double>;

// Gauss nodes and weights of the two-exponential fourth-order scheme.
const double kC1 = 0.5 - std::sqrt(3.0) / 6.0;
const double kC2 = 0.5 + std::sqrt(3.0) / 6.0;
const double kA1 = (3.0 - 2.0 * std::sqrt(3.0)) / 12.0;
const double kA2 = (3.0 + 2.0 * std::sqrt(3.0)) / 12.0;

// Combination w1 G(a1) + w2 G(a2) with w1 + w2 = 1/2.
Eigen::MatrixXcd blended(const TransmonBasis& b, double w1, double a1, double w2, double a2) {
    const double s = b.params.lambda / b.params.hbar_eff;
    const double cc = w1 * (std::cos(a1) - 1.0) + w2 * (std::cos(a2) - 1.0);
    const double ss = w1 * std::sin(a1) + w2 * std::sin(a2);
    Eigen::MatrixXcd X(b.d, b.d);
    X.real() = -s * cc * b.cos_op;
    X.real().diagonal() += (w1 + w2) * b.levels;
    // sin(phi) = -i * shift_antisym
    X.imag() = s * ss * b.shift_antisym;
    return X;
}

struct HermExp {
    Eigen::MatrixXcd V;
    Eigen::VectorXd w;
};

HermExp decompose(const Eigen::MatrixXcd& X) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(X);
    if (es.info() != Eigen::Success) throw AccuracyError("Hermitian eigendecomposition failed");
    return {es.eigenvectors(), es.eigenvalues()};
}

// exp(-i h X) and exp(-i h conj(X)) from one decomposition of X.
std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> exp_pair(const HermExp& e, double h) {
    Eigen::VectorXcd ph(e.w.size());
    for (Eigen::Index i = 0; i < e.w.size(); ++i) ph(i) = std::polar(1.0, -h * e.w(i));
    Eigen::MatrixXcd direct = e.V * ph.asDiagonal() * e.V.adjoint();
    Eigen::MatrixXcd mirrored = e.V.conjugate() * ph.asDiagonal() * e.V.transpose();
    return {std::move(direct), std::move(mirrored)};
}

void cf4_step(const TransmonBasis& b, double xi, double t, double h, Eigen::VectorXcd& psi) {
    const double a1 = xi * std::sin(t + kC1 * h), a2 = xi * std::sin(t + kC2 * h);
    psi = expm_hermitian(blended(b, kA2, a1, kA1, a2), h) * psi;
    psi = expm_hermitian(blended(b, kA1, a1, kA2, a2), h) * psi;
}

}  // namespace

Eigen::MatrixXcd generator(const TransmonBasis& b, double a) { return blended(b, 1.0, a, 0.0, 0.0); }

Eigen::MatrixXcd expm_hermitian(const Eigen::MatrixXcd& X, double h) {
    return exp_pair(decompose(X), h).first;
}

PeriodPropagator::PeriodPropagator(const TransmonBasis& b, double xi_d, int M, unsigned threads)
    : xi_d_(xi_d) {
    if (M < 4 || M % 4 != 0) throw InvalidParameter("steps_per_period must be a positive multiple of 4");
    if (!(xi_d >= 0)) throw InvalidParameter("xi_d must be non-negative");
    const double h = kPeriod / M;
    const int quarter = M / 4, half = M / 2;
    steps_.resize(M);
    // a(t) = xi sin t: step M/2-1-k uses the nodes of step k swapped, and
    // step k + M/2 uses the conjugate generator. Only the first quarter
    // needs decompositions.
    parallel_for(static_cast<std::size_t>(quarter), threads, [&](std::size_t kk) {
        const int k = static_cast<int>(kk);
        const double t = k * h;
        const double a1 = xi_d * std::sin(t + kC1 * h), a2 = xi_d * std::sin(t + kC2 * h);
        const auto [e1, e1m] = exp_pair(decompose(blended(b, kA2, a1, kA1, a2)), h);
        const auto [e2, e2m] = exp_pair(decompose(blended(b, kA1, a1, kA2, a2)), h);
        steps_[k] = e2 * e1;
        steps_[half - 1 - k] = e1 * e2;
        steps_[half + k] = e2m * e1m;
        steps_[M - 1 - k] = e1m * e2m;
    });
}

Eigen::MatrixXcd PeriodPropagator::monodromy() const {
    Eigen::MatrixXcd U = steps_[0];
    for (int k = 1; k < steps(); ++k) U = steps_[k] * U;
    return U;
}

std::vector<Eigen::MatrixXcd> PeriodPropagator::sampled(int s) const {
    if (s < 1 || steps() % s != 0) throw InvalidParameter("samples_per_period must divide the step count");
    const int stride = steps() / s;
    std::vector<Eigen::MatrixXcd> out;
    out.reserve(s);
    Eigen::MatrixXcd U = Eigen::MatrixXcd::Identity(dim(), dim());
    for (int k = 0; k < steps(); ++k) {
        U = steps_[k] * U;
        if ((k + 1) % stride == 0) out.push_back(U);
    }
    return out;
}

void PeriodPropagator::change_basis(const Eigen::MatrixXd& W) {
    const Eigen::MatrixXcd Wc = W.cast<cd>();
    for (auto& S : steps_) S = Wc.transpose() * S * Wc;
}

double unitarity_deviation(const Eigen::MatrixXcd& U) {
    return (U.adjoint() * U - Eigen::MatrixXcd::Identity(U.cols(), U.cols())).cwiseAbs().maxCoeff();
}

double doubling_error(const TransmonBasis& b, double xi_d, int M, unsigned threads) {
    const Eigen::MatrixXcd a = PeriodPropagator(b, xi_d, M, threads).monodromy();
    const Eigen::MatrixXcd c = PeriodPropagator(b, xi_d, 2 * M, threads).monodromy();
    return (a - c).cwiseAbs().maxCoeff();
}

PeriodConvergence converge_steps(const TransmonBasis& b, double xi_d, int M, double tol,
                                 unsigned threads) {
    PeriodConvergence r;
    r.tolerance = tol;
    Eigen::MatrixXcd prev = PeriodPropagator(b, xi_d, M, threads).monodromy();
    for (int attempt = 0; attempt <= 2; ++attempt) {
        const Eigen::MatrixXcd next = PeriodPropagator(b, xi_d, 2 * M, threads).monodromy();
        const double err = (prev - next).cwiseAbs().maxCoeff();
        r.tried.push_back(M);
        r.errors.push_back(err);
        if (err <= tol) {
            r.steps_per_period = M;
            return r;
        }
        M *= 2;
        prev = next;
    }
    throw AccuracyError("one-period propagator not converged after two doublings (error " +
                        std::to_string(r.errors.back()) + ")");
}

Eigen::VectorXcd propagate_fixed(const TransmonBasis& b, double xi_d, const Eigen::VectorXcd& psi,
                                 double t0, double t1, int n) {
    Eigen::VectorXcd out = psi;
    if (n <= 0 || t1 == t0) return out;
    const double h = (t1 - t0) / n;
    for (int k = 0; k < n; ++k) cf4_step(b, xi_d, t0 + k * h, h, out);
    return out;
}

WaveState propagate(const TransmonBasis& b, double xi_d, const WaveState& state, double t1,
                    int steps_per_period, double tol) {
    if (state.amplitudes.size() != b.d) throw InvalidParameter("state dimension does not match basis");
    if (std::abs(state.norm() - 1.0) > 1e-10) throw InvalidParameter("state must be normalized");
    if (t1 < state.t) throw InvalidParameter("t1 must not precede the state time");
    const double span = t1 - state.t;
    int n = std::max(1, static_cast<int>(std::ceil(span / (kPeriod / steps_per_period) - 1e-9)));
    Eigen::VectorXcd prev = propagate_fixed(b, xi_d, state.amplitudes, state.t, t1, n);
    for (int attempt = 0; attempt <= 2; ++attempt) {
        n *= 2;
        Eigen::VectorXcd next = propagate_fixed(b, xi_d, state.amplitudes, state.t, t1, n);
        if ((next - prev).norm() <= tol) return {next, t1, false};
        prev = std::move(next);
    }
    throw AccuracyError("propagate not converged after two doublings");
}

Eigen::VectorXcd propagate_lab_frame(const TransmonBasis& b, double xi_d,
                                     const Eigen::VectorXcd& psi, double t0, double t1, int n) {
    Eigen::VectorXcd out = psi;
    const double h = (t1 - t0) / n;
    auto gen = [&](double w1, double t1_, double w2, double t2_) {
        Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(b.d, b.d);
        X.real() = -xi_d * (w1 * std::cos(t1_) + w2 * std::cos(t2_)) * b.n_op;
        X.real().diagonal() += (w1 + w2) * b.levels;
        return X;
    };
    for (int k = 0; k < n; ++k) {
        const double t = t0 + k * h, ta = t + kC1 * h, tb = t + kC2 * h;
        out = expm_hermitian(gen(kA2, ta, kA1, tb), h) * out;
        out = expm_hermitian(gen(kA1, ta, kA2, tb), h) * out;
    }
    return out;
}

}  // namespace tlab::quantum
