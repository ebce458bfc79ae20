#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lorenztest/interval.hpp"
#include "lorenztest/maps.hpp"
#include "lorenztest/rng.hpp"
#include "lorenztest/transitivity.hpp"

namespace lorenztest {

/// Normalized histogram of a long orbit together with its detected support.
/// density[i] is probability per unit length over [bin_edges[i],
/// bin_edges[i+1]]; the support is the union of maximal runs of nonzero bins.
struct DensityEstimate {
    std::vector<double> bin_edges;  // bins + 1 edges spanning [lo, hi]
    std::vector<double> density;
    IntervalList support;

    double bin_width() const { return bin_edges[1] - bin_edges[0]; }
};

/// Histogram + support of an existing sample sequence.
inline DensityEstimate density_from_samples(const std::vector<double>& samples, double lo,
                                            double hi, int bins) {
    if (bins < 1) throw std::invalid_argument("density_from_samples: bins must be >= 1");
    if (samples.empty()) throw std::invalid_argument("density_from_samples: no samples");

    DensityEstimate out;
    out.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
    for (int i = 0; i <= bins; ++i)
        out.bin_edges[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / bins;

    const double delta = (hi - lo) / bins;
    std::vector<std::int64_t> counts(static_cast<std::size_t>(bins));
    for (double x : samples) {
        auto bin = static_cast<std::int64_t>(std::floor((x - lo) / delta));
        if (bin < 0) bin = 0;
        if (bin >= bins) bin = bins - 1;
        ++counts[static_cast<std::size_t>(bin)];
    }

    const double norm = 1.0 / (static_cast<double>(samples.size()) * delta);
    out.density.resize(static_cast<std::size_t>(bins));
    for (int i = 0; i < bins; ++i)
        out.density[static_cast<std::size_t>(i)] = static_cast<double>(counts[i]) * norm;

    // Support: maximal runs of nonzero bins, as closed intervals on bin edges.
    for (int i = 0; i < bins;) {
        if (counts[static_cast<std::size_t>(i)] == 0) {
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 < bins && counts[static_cast<std::size_t>(j + 1)] > 0) ++j;
        out.support.push_back({out.bin_edges[static_cast<std::size_t>(i)],
                               out.bin_edges[static_cast<std::size_t>(j) + 1]});
        i = j + 1;
    }
    return out;
}

/// Empirical invariant density of the map on [lo, hi): iterate n_iterations
/// samples from a seeded random start, drop the first `transient`, histogram
/// the rest. The density integrates to 1 and the support comes out as a union
/// of closed intervals (a single full interval in the transitive case).
inline DensityEstimate empirical_density(const MapSpec& map, double lo, double hi,
                                         std::int64_t n_iterations = 1000000,
                                         std::int64_t transient = 1000, int bins = 1000,
                                         std::uint64_t seed = 0) {
    if (transient >= n_iterations)
        throw std::invalid_argument("empirical_density: transient must be < n_iterations");
    SplitMix64 gen(mix_seed(seed, 0));
    double x = gen.next_in(lo, hi);
    for (std::int64_t i = 0; i < transient; ++i) x = map.eval(x);
    std::vector<double> samples(static_cast<std::size_t>(n_iterations - transient));
    for (auto& s : samples) {
        s = x;
        x = map.eval(x);
    }
    return density_from_samples(samples, lo, hi, bins);
}

/// Voltage trace of a CNV map: iterates the transient away from x0, then
/// records n values. With transient = 0 the first sample is x0 itself.
inline std::vector<double> voltage_time_series(const MapSpec& spec, double x0, std::int64_t n,
                                               std::int64_t transient = 0) {
    if (spec.family != MapFamily::PlCnv && spec.family != MapFamily::NlCnv)
        throw std::invalid_argument("voltage_time_series: not a CNV map");
    if (!(x0 >= spec.domain_lo && x0 < spec.domain_hi))
        throw std::domain_error("voltage_time_series: x0 outside the invariant interval");
    if (n < 1) throw std::invalid_argument("voltage_time_series: n must be >= 1");
    double x = x0;
    for (std::int64_t i = 0; i < transient; ++i) x = spec.eval(x);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (auto& s : out) {
        s = x;
        x = spec.eval(x);
    }
    return out;
}

}  // namespace lorenztest
