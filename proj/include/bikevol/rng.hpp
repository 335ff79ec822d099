#ifndef BIKEVOL_RNG_HPP
#define BIKEVOL_RNG_HPP

#include <cmath>
#include <cstdint>

#include "bikevol/geo.hpp"

namespace bikevol {

// splitmix64: fixed algorithm so generated fixtures are identical across
// platforms and standard-library versions.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double next_double() { // [0, 1)
        return double(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

    // Box-Muller, one draw per call (the sine branch is discarded so the
    // stream stays a simple function of call count).
    double normal(double mean, double sigma) {
        double u1 = next_double();
        double u2 = next_double();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        return mean + sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }

private:
    std::uint64_t state_;
};

} // namespace bikevol

#endif
