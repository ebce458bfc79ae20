#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>

#include "lorenztest/interval.hpp"
#include "lorenztest/maps.hpp"

namespace lorenztest {

/// Knobs of the interval-image LEO test. The iteration cap and subdivision
/// count bound the work; tolerances default to multiples of the domain length
/// (merge 1e-12, cover 1e-9) when left unset.
struct LeoConfig {
    int subdivisions = 100;          // m, equal parts of the domain
    int max_image_iterations = 500;  // l, cap on image iterations
    std::optional<double> merge_tolerance{};
    std::optional<double> cover_tolerance{};

    double merge_tol(double lo, double hi) const {
        return merge_tolerance ? *merge_tolerance : 1e-12 * (hi - lo);
    }
    double cover_tol(double lo, double hi) const {
        return cover_tolerance ? *cover_tolerance : 1e-9 * (hi - lo);
    }
};

/// Image of an interval under an iterated map, plus the number of iterations
/// actually performed (early stop on full cover).
struct ImageResult {
    IntervalList intervals;
    int iterations = 0;
};

inline bool covers_domain(const IntervalList& list, double lo, double hi, double tol) {
    return list.size() == 1 && list[0].lo <= lo + tol && list[0].hi >= hi - tol;
}

namespace detail {

/// Core of the image iteration, generic over the map evaluation so tests can
/// drive it with arbitrary callables. `f` must be defined on the closed
/// domain [lo, hi], increasing on [lo, c) and [c, hi] with f(c) = lo, and
/// f(hi) meaning the upper-branch limit.
template <typename F>
ImageResult image_impl(F&& f, double c, double x, double y, double lo, double hi,
                       const LeoConfig& cfg) {
    if (!(lo <= x && x < y && y <= hi))
        throw std::invalid_argument("image: requires lo <= x < y <= hi");
    if (!(lo < c && c < hi))
        throw std::invalid_argument("image: discontinuity must lie inside (lo, hi)");
    if (cfg.max_image_iterations < 1 || cfg.subdivisions < 1)
        throw std::invalid_argument("image: iteration and subdivision counts must be >= 1");

    const double merge_tol = cfg.merge_tol(lo, hi);
    const double cover_tol = cfg.cover_tol(lo, hi);
    const std::size_t cap = 10 * static_cast<std::size_t>(cfg.subdivisions);

    IntervalList intervals{{x, y}};
    IntervalList next;
    int performed = 0;
    for (int i = 1; i <= cfg.max_image_iterations; ++i) {
        next.clear();
        for (const Interval& iv : intervals) {
            const double t1 = f(iv.lo);
            const double t2 = f(iv.hi);
            if (iv.lo < c && c < iv.hi) {
                // The interval straddles the jump: the left part climbs to the
                // domain top, the right part restarts at the bottom.
                next.push_back({lo, t2});
                next.push_back({t1, hi});
            } else if (iv.hi == c) {
                next.push_back({t1, hi});
            } else {
                // Entirely on one branch; an interval starting exactly at c
                // lies on the right branch since f(c) = lo.
                next.push_back({t1, t2});
            }
        }
        intervals = merge_intervals(next, merge_tol);
        performed = i;
        if (intervals.size() > cap)
            throw std::runtime_error(
                "image: interval list exceeded its cap; the map does not appear to expand");
        if (covers_domain(intervals, lo, hi, cover_tol)) break;
    }
    return {std::move(intervals), performed};
}

}  // namespace detail

/// Approximate image of [x, y] under up to cfg.max_image_iterations iterates
/// of the map, as a merged union of closed intervals. Stops early once the
/// union covers [lo, hi] within the cover tolerance.
inline ImageResult image(const MapSpec& map, double c, double x, double y, double lo, double hi,
                         const LeoConfig& cfg) {
    return detail::image_impl([&map](double u) { return map.eval_endpoint(u); }, c, x, y, lo, hi,
                              cfg);
}

/// True when the iterated image of [x, y] covers the whole domain.
inline bool cover_test(const MapSpec& map, double c, double x, double y, double lo, double hi,
                       const LeoConfig& cfg) {
    ImageResult r = image(map, c, x, y, lo, hi, cfg);
    return covers_domain(r.intervals, lo, hi, cfg.cover_tol(lo, hi));
}

/// Splits [lo, hi] into cfg.subdivisions equal parts and requires every part
/// to cover the domain under iteration; false at the first failure.
/// Deterministic: no randomness is involved.
inline bool leo_test(const MapSpec& map, double c, double lo, double hi, const LeoConfig& cfg) {
    const double dm = (hi - lo) / cfg.subdivisions;
    for (int i = 1; i <= cfg.subdivisions; ++i) {
        const double x = lo + (i - 1) * dm;
        const double y = std::min(lo + i * dm, hi);
        if (!cover_test(map, c, x, y, lo, hi, cfg)) return false;
    }
    return true;
}

}  // namespace lorenztest
