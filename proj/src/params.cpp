#include "tlab/params.hpp"

#include <cmath>
#include <string>

#include "tlab/errors.hpp"

namespace tlab {

namespace {

constexpr double kGiga = 1e9;

void require(bool ok, const std::string& msg) {
    if (!ok) throw InvalidParameter(msg);
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

void validate(const CircuitParams& c) {
    require(finite(c.E_J) && c.E_J > 0, "E_J must be positive");
    require(finite(c.E_C) && c.E_C > 0, "E_C must be positive");
    require(finite(c.omega_d) && c.omega_d > 0, "omega_d must be positive");
    require(finite(c.eps_d) && c.eps_d >= 0, "eps_d must be non-negative");
    require(finite(c.g) && c.g >= 0, "g must be non-negative");
    require(finite(c.omega_q), "omega_q must be finite");
    require(finite(c.n_g), "n_g must be finite");
}

void validate(const ModelParams& m) {
    require(finite(m.lambda) && m.lambda > 0, "lambda must be positive");
    require(finite(m.xi_d) && m.xi_d >= 0, "xi_d must be non-negative");
    require(finite(m.hbar_eff) && m.hbar_eff > 0, "hbar_eff must be positive");
    require(finite(m.omega_q_t), "omega_q_t must be finite");
    require(finite(m.g_t) && m.g_t >= 0, "g_t must be non-negative");
    require(finite(m.n_g), "n_g must be finite");
}

ModelParams rescale(const CircuitParams& c) {
    validate(c);
    // hbar*omega_d / h in GHz.
    const double fd = c.omega_d / (2.0 * kPi) / kGiga;
    ModelParams m;
    m.lambda = 8.0 * c.E_J * c.E_C / (fd * fd);
    m.xi_d = c.eps_d / c.omega_d;
    m.hbar_eff = 8.0 * c.E_C / fd;
    m.omega_q_t = c.omega_q / c.omega_d;
    m.g_t = c.g / (2.0 * kPi) / kGiga / (8.0 * c.E_C);
    m.n_g = wrap_offset_charge(c.n_g);
    return m;
}

CircuitParams to_circuit(const ModelParams& m, double E_C) {
    validate(m);
    require(finite(E_C) && E_C > 0, "E_C must be positive");
    const double fd = 8.0 * E_C / m.hbar_eff;
    CircuitParams c;
    c.E_C = E_C;
    c.E_J = m.lambda * fd * fd / (8.0 * E_C);
    c.omega_d = 2.0 * kPi * fd * kGiga;
    c.eps_d = m.xi_d * c.omega_d;
    c.omega_q = m.omega_q_t * c.omega_d;
    c.g = m.g_t * 8.0 * E_C * 2.0 * kPi * kGiga;
    c.n_g = m.n_g;
    return c;
}

double bound_state_count(const ModelParams& m) {
    return 2.0 * std::sqrt(m.lambda) / m.hbar_eff;
}

double plasma_frequency_ghz(const CircuitParams& c) {
    return std::sqrt(8.0 * c.E_C * c.E_J);
}

double wrap_offset_charge(double n_g) {
    double r = n_g - std::floor(n_g);
    return r >= 1.0 ? 0.0 : r;
}

}  // namespace tlab
