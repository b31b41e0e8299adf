#pragma once

namespace tlab {

// Rescaled period of the drive.
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kPeriod = 2.0 * kPi;

// Circuit-level parameters. Energies are E/h in GHz, rates are angular
// frequencies in rad/s.
struct CircuitParams {
    double E_J = 0.0;
    double E_C = 0.0;
    double eps_d = 0.0;
    double omega_d = 0.0;
    double omega_q = 0.0;
    double g = 0.0;
    double n_g = 0.0;
};

// Dimensionless model parameters in units of the drive frequency.
struct ModelParams {
    double lambda = 0.47;
    double xi_d = 0.0;
    double hbar_eff = 0.16;
    double omega_q_t = 0.0;
    double g_t = 0.0;
    double n_g = 0.0;
};

void validate(const CircuitParams& c);
void validate(const ModelParams& m);

ModelParams rescale(const CircuitParams& c);

// Inverse of rescale for a chosen charging energy E_C (GHz).
CircuitParams to_circuit(const ModelParams& m, double E_C);

// Approximate number of states bound in the cosine well, 2*sqrt(lambda)/hbar_eff.
double bound_state_count(const ModelParams& m);

// Plasma frequency sqrt(8 E_J E_C)/h in GHz.
double plasma_frequency_ghz(const CircuitParams& c);

// Offset charge reduced to [0, 1).
double wrap_offset_charge(double n_g);

}  // namespace tlab
