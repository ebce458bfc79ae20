#pragma once

#include <cmath>
#include <cstdint>

namespace lorenztest {

// SplitMix64: tiny, fast, platform-independent generator. Used everywhere a
// reproducible stream is needed; the same seed yields the same stream on any
// platform and under any thread schedule.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi); never returns hi even under rounding.
    double next_in(double lo, double hi) {
        double v = lo + next_double() * (hi - lo);
        return v < hi ? v : std::nextafter(hi, lo);
    }

private:
    std::uint64_t state_;
};

/// Stateless seed derivation. Trial j of a test uses mix_seed(seed, j),
/// cell (i, j) of a sweep uses mix_seed(seed, i, j); results are therefore
/// independent of execution order.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 g(seed ^ (index * 0x9E3779B97F4A7C15ULL));
    return g.next();
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t i, std::uint64_t j) {
    return mix_seed(mix_seed(seed, i), j);
}

}  // namespace lorenztest
