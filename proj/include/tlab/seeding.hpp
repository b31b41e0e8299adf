#pragma once

#include <cstdint>
#include <cmath>
#include <random>

namespace tlab {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stream seed for work unit `index` of a run seeded with `seed`.
// Two rounds so that neighbouring (seed, index) pairs decorrelate.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed, std::uint64_t index) {
    return Rng(derive_seed(seed, index));
}

// Standard normal via Box-Muller on 53-bit uniforms. Used instead of
// std::normal_distribution so sample streams do not depend on the
// standard library implementation.
class Normal {
public:
    double operator()(Rng& rng) {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform(rng);
        double u2 = uniform(rng);
        while (u1 <= 0.0) u1 = uniform(rng);
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    static double uniform(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

private:
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace tlab
