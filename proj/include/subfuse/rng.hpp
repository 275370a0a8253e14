#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "subfuse/errors.hpp"

namespace subfuse {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace detail

// Deterministic, platform-independent stream: mt19937_64 (whose output
// sequence is fixed by the standard) seeded from a splitmix64-mixed
// (seed, stream) pair, with hand-rolled uniform and Box-Muller normal draws
// so no implementation-defined distribution code is involved.  Stream k is
// unaffected by draws made on any other stream.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream)
        : eng_(detail::splitmix64(detail::splitmix64(seed) ^ stream)) {}

    // uniform on [0, 1)
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    // index into probs (must sum to ~1)
    int discrete(const std::vector<double>& probs) {
        const double u = uniform();
        double acc = 0.0;
        for (size_t k = 0; k < probs.size(); ++k) {
            acc += probs[k];
            if (u < acc) return static_cast<int>(k);
        }
        return static_cast<int>(probs.size()) - 1;
    }

private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace subfuse
