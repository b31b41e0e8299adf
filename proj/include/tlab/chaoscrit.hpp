#pragma once

#include <optional>
#include <vector>

namespace tlab::chaos {

// J_m(x) for 0 <= m <= 200, 0 <= x <= 1000; RangeError outside.
double bessel_j(int m, double x);

// Location of the first maximum of J_1.
double bessel_j1_argmax();

struct ResonanceCurve {
    int m = 0;
    double width = 0.0;
    double upper_at_zero = 0.0;
    double lower_at_zero = 0.0;
};

enum class HalfPlane { upper, lower };

// Resonances m = 0..m_max (negated m for the lower half-plane).
std::vector<ResonanceCurve> resonance_curves(double lambda, double xi_d, int m_max,
                                             HalfPlane side = HalfPlane::upper);

inline constexpr double kWidthEpsilon = 1e-8;
inline constexpr double kTangentTolerance = 1e-9;

struct ChaoticLayer {
    double p_bar = 0.0;
    std::optional<int> m_bar;
    // overlaps[m] describes the pair (m, m+1); the scan stops at the first
    // non-overlapping pair.
    std::vector<bool> overlaps;
    // True when the terminating pair was within kTangentTolerance of touching.
    bool near_tangent = false;
};

// m_max <= 0 picks a default large enough for J_m(xi_d) to have decayed.
ChaoticLayer chaotic_layer_bound(double lambda, double xi_d, int m_max = 0,
                                 HalfPlane side = HalfPlane::upper);

// Lowest positive root of 1 - 2 sqrt(lambda |J_1(x)|); empty when
// 4 lambda max|J_1| < 1.
std::optional<double> threshold_lower(double lambda);

// Lowest positive root of 1 - 2 sqrt(lambda |J_1|) = 2 sqrt(lambda |J_0|)
// whose positive excursion is at least kUpperMinWindow wide.
std::optional<double> threshold_upper(double lambda);
inline constexpr double kUpperMinWindow = 0.01;

double threshold_lower_residual(double lambda, double x);
double threshold_upper_residual(double lambda, double x);

double diffusion_rate(double lambda, double xi_d);

struct StandardMapK {
    double k = 0.0;
    double kT = 0.0;
    bool chaotic = false;
};
inline constexpr double kChirikovCritical = 1.0;
StandardMapK standard_map_k(double lambda, double xi_d);

double localization_length(double D, double hbar_eff);
double sigma_star_classical(double p_bar);
double sigma_star_quantum(double hbar_eff, double l_n);
double localization_threshold(double lambda, double hbar_eff);

}  // namespace tlab::chaos
