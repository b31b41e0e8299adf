#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tlab/pendulum.hpp"
#include "tlab/quantum/basis.hpp"
#include "tlab/quantum/propagator.hpp"

namespace tlab::tls {

// psi0 = sin(theta/2)|g> + e^{i phi} cos(theta/2)|e>; theta = 0 is |e>.
struct TlsInit {
    double theta = 0.0;
    double phi = 0.0;
};

void validate(const TlsInit& tls);

// Pauli expectations with sigma_z = |e><e| - |g><g|.
struct Bloch {
    double x = 0.0, y = 0.0, z = 0.0;
};
Bloch bloch(std::complex<double> c_g, std::complex<double> c_e);

struct TimeSeries {
    std::vector<double> t;
    std::vector<double> sz, sx, sy;
    int samples_per_period = 1;
    std::size_t n_members = 1;  // trajectories or offset charges averaged
    std::vector<std::string> notes;
};

// Stroboscopic subsequence (samples at multiples of T).
TimeSeries stroboscopic(const TimeSeries& ts);

// ---- coupled quantum evolution -------------------------------------------

// One-period propagator of transmon (x) TLS. States are ordered [g block,
// e block], each block expressed in the eigenbasis W of the projected charge
// operator, so the TLS term is 2x2 per charge eigenvalue. Each step is a
// Strang split of the transmon CF4 step with the exact TLS exponential.
class CoupledPropagator {
public:
    CoupledPropagator(const quantum::TransmonBasis& basis, double xi_d, double omega_q_t,
                      double g_t, int steps_per_period = quantum::kDefaultStepsPerPeriod,
                      unsigned threads = 1);

    int dim() const { return 2 * d_; }
    int steps() const { return transmon_.steps(); }
    const Eigen::MatrixXd& charge_eigvecs() const { return W_; }

    // U(jT/s) for j = 1..s.
    std::vector<Eigen::MatrixXcd> sampled(int samples_per_period) const;
    Eigen::MatrixXcd monodromy() const { return sampled(1).back(); }

    // Uncoupled transmon one-period propagator in the W basis.
    Eigen::MatrixXcd transmon_monodromy() const { return transmon_.monodromy(); }

    // TLS state (x) transmon eigenstate k, in the coupled ordering.
    Eigen::VectorXcd product_state(const TlsInit& tls, int k = 0) const;

private:
    void apply_tls(Eigen::MatrixXcd& U, bool half) const;

    int d_;
    Eigen::MatrixXd W_;
    Eigen::VectorXd nu_;
    quantum::PeriodPropagator transmon_;
    Eigen::VectorXcd half_a_, half_b_, half_c_, full_a_, full_b_, full_c_;
};

struct CoupledConvergence {
    int steps_per_period = 0;
    std::vector<double> errors;
};

// Step doubling on the coupled U(T); throws AccuracyError after two failed
// doublings.
CoupledConvergence converge_coupled(const quantum::TransmonBasis& basis, double xi_d,
                                    double omega_q_t, double g_t, int steps_per_period,
                                    double tol = quantum::kDefaultPeriodTolerance,
                                    unsigned threads = 1);

struct CoupledRun {
    TimeSeries series;
    CoupledConvergence convergence;  // for the first offset charge
    double max_unitarity_deviation = 0.0;
};

// Transmon ground state (x) tls, averaged over n_g_list. params.n_g is
// ignored. Samples at nT + jT/s.
CoupledRun evolve_coupled_quantum(const ModelParams& params, const quantum::BasisSize& size,
                                  const TlsInit& tls, const std::vector<double>& n_g_list,
                                  int n_periods, int samples_per_period = 1,
                                  int steps_per_period = quantum::kDefaultStepsPerPeriod,
                                  unsigned threads = 1);

// ---- semiclassical evolution ---------------------------------------------

// Piecewise-constant momentum: p[k] holds on [t0 + k dt, t0 + (k+1) dt).
struct DriveSignal {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<double> p;
};

inline constexpr double kMaxDriveDt = kPeriod / 50.0;

// i d/dt psi = [(omega/2) sigma_z + g p(t) sigma_x] psi with the exact 2x2
// exponential per drive interval. Records every `stride` intervals.
TimeSeries evolve_semiclassical(double omega_q_t, double g_t, const DriveSignal& drive,
                                const TlsInit& tls, std::size_t stride = 1);

struct SemiclassicalSpec {
    double omega_q_t = 1.0 / std::sqrt(2.0);
    double g_t = 0.01;
    TlsInit tls;
    int n_periods = 200;
    int samples_per_period = 1;
    std::size_t n_traj = 5000;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

// Pendulum trajectories from `init`, integrated with dt = T/1000; the drive
// holds the interval average of p over T/200.
TimeSeries pendulum_driven(double lambda, double xi_d, const pendulum::Sampler& init,
                           const SemiclassicalSpec& spec);

// Husimi samples of the transmon ground state as initial conditions.
pendulum::Sampler ground_state_sampler(const ModelParams& params, const quantum::BasisSize& size);

// Reflected Brownian motion on [-p_bar, p_bar] started from its stationary
// (uniform) law; drive value is the mean of the interval endpoints, dt = T/200.
TimeSeries rbm_driven(double D, double p_bar, const SemiclassicalSpec& spec);

// ---- analysis ------------------------------------------------------------

struct DecayFit {
    double rate = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int window = 0;  // periods
    std::size_t n_points = 0;
};

// Regression of log|sz(nT)| on nT over 0 <= n <= n_periods.
DecayFit extract_rate(const TimeSeries& ts, int n_periods = 200);

// Dominant angular frequency of x (uniform spacing dt) from the DFT peak with
// parabolic refinement.
double dominant_frequency(const std::vector<double>& x, double dt);

// Upper envelope of sx: refined local maxima, the largest per window of one
// oscillation period (frequency from the first 50 periods), interpolated
// linearly and held flat beyond the first and last window peaks.
std::vector<double> upper_envelope(const TimeSeries& ts);

// Same, for a raw uniformly sampled signal and a given window length.
std::vector<double> upper_envelope(const std::vector<double>& t, const std::vector<double>& x,
                                   double window);

// omega within 0.02 of 1/2, 1, 3/2 or 2.
bool resonance_flag(double omega_q_t);

// ---- long-time plateau ---------------------------------------------------

struct PlateauEstimate {
    double z_ss_dressed2 = 0.0;  // sum over all modes of |c_a|^2 z_a, averaged over a period
    double z_ss_l_alpha = 0.0;   // sum over chaotic modes of |c_a|^2 z_a at t = nT
    double z_ss_uniform = 0.0;   // |d|^2 = 1/N_ch, phase term dropped
    double z_ss_var = 0.0;       // sum_chaotic z_a^2 / (2 N_ch)
    double n_chaotic = 0.0;  // coupled modes with IPR < cut over TLS (x) undriven eigenstates
    double n_chaotic_floquet_ref = 0.0;  // same cut over TLS (x) transmon Floquet modes
    double max_unitarity_deviation = 0.0;
};

// The first three estimates predict the stroboscopic plateau of <sigma_z>
// for the given initial state; z_ss_var does not depend on it. N_ch is half
// the coupled chaotic count. Averages over n_g_list.
PlateauEstimate plateau_floquet(const ModelParams& params, const quantum::BasisSize& size,
                                const TlsInit& tls, const std::vector<double>& n_g_list,
                                double ipr_cut = 0.3,
                                int steps_per_period = quantum::kDefaultStepsPerPeriod,
                                unsigned threads = 1);

// Several initial states share one decomposition per offset charge.
std::vector<PlateauEstimate> plateau_floquet(const ModelParams& params,
                                             const quantum::BasisSize& size,
                                             const std::vector<TlsInit>& tls,
                                             const std::vector<double>& n_g_list,
                                             double ipr_cut = 0.3,
                                             int steps_per_period = quantum::kDefaultStepsPerPeriod,
                                             unsigned threads = 1);

struct CoupledFloquetMode {
    double quasienergy = 0.0;
    double ipr_floquet = 0.0;
    double ipr_static = 0.0;
    double z = 0.0;
};

// Per-mode data of the coupled decomposition at params.n_g.
std::vector<CoupledFloquetMode> coupled_floquet_modes(const ModelParams& params,
                                                      const quantum::BasisSize& size,
                                                      int steps_per_period = quantum::kDefaultStepsPerPeriod,
                                                      unsigned threads = 1);

}  // namespace tlab::tls
