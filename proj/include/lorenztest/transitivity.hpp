#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lorenztest/maps.hpp"
#include "lorenztest/rng.hpp"

namespace lorenztest {

/// Knobs of the orbit-coverage transitivity test. Defaults follow the
/// reference procedure: 50000 iterations, 5 trials, transient 200, 1000 bins.
struct TransitivityConfig {
    std::int64_t iterations = 50000;  // N, total samples per trial (x0 included)
    int num_trials = 5;
    std::int64_t transient = 200;  // k, 1-based index of the first kept sample
    int bins = 1000;
    std::uint64_t seed = 0;
};

/// First passing trial, kept so a positive answer can be audited by replaying
/// the orbit.
struct TransWitness {
    int trial = -1;
    double x0 = 0.0;
};

/// Orbit x0, f(x0), f^2(x0), ... of length n.
inline std::vector<double> generate_orbit(const MapSpec& map, double x0, std::int64_t n) {
    if (!(x0 >= map.domain_lo && x0 < map.domain_hi))
        throw std::domain_error("generate_orbit: x0 outside the map domain");
    if (n < 1) throw std::invalid_argument("generate_orbit: n must be >= 1");
    std::vector<double> orbit(static_cast<std::size_t>(n));
    orbit[0] = x0;
    for (std::int64_t i = 1; i < n; ++i) orbit[i] = map.eval(orbit[i - 1]);
    return orbit;
}

/// Orbit-coverage test on [lo, hi). Each trial draws a random start, iterates
/// the map N times, drops the transient (samples 1..k-1) and bins the rest
/// into `bins` equal bins; a trial passes when every bin is hit. Coverage is
/// checked only after the full series, and the test returns true at the first
/// passing trial. Trial j draws from the stream mix_seed(cfg.seed, j), so the
/// outcome is reproducible and independent of scheduling.
inline bool num_trans_test(const MapSpec& map, double lo, double hi,
                           const TransitivityConfig& cfg, TransWitness* witness = nullptr) {
    if (cfg.transient >= cfg.iterations)
        throw std::invalid_argument("num_trans_test: transient must be < iterations");
    if (cfg.bins < 1) throw std::invalid_argument("num_trans_test: bins must be >= 1");
    if (cfg.num_trials < 1) throw std::invalid_argument("num_trans_test: num_trials must be >= 1");

    const double delta = (hi - lo) / cfg.bins;
    std::vector<std::int64_t> bincounts(static_cast<std::size_t>(cfg.bins));

    for (int trial = 0; trial < cfg.num_trials; ++trial) {
        SplitMix64 gen(mix_seed(cfg.seed, static_cast<std::uint64_t>(trial)));
        const double x0 = gen.next_in(lo, hi);

        std::fill(bincounts.begin(), bincounts.end(), 0);
        int hit = 0;
        double x = x0;
        for (std::int64_t i = 1; i <= cfg.iterations; ++i) {
            if (i >= cfg.transient) {
                auto bin = static_cast<std::int64_t>(std::floor((x - lo) / delta));
                if (bin < 0) bin = 0;
                if (bin >= cfg.bins) bin = cfg.bins - 1;
                if (bincounts[static_cast<std::size_t>(bin)]++ == 0) ++hit;
            }
            if (i < cfg.iterations) x = map.eval(x);
        }
        if (hit == cfg.bins) {
            if (witness) *witness = {trial, x0};
            return true;
        }
    }
    return false;
}

}  // namespace lorenztest
