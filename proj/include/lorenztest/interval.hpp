#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace lorenztest {

/// Closed interval [lo, hi] with lo <= hi.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    bool contains(double x) const { return lo <= x && x <= hi; }
};

inline bool operator==(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi;
}

/// Finite union of closed intervals. After merge_intervals the list is sorted
/// by left endpoint and pairwise disjoint.
using IntervalList = std::vector<Interval>;

/// Sorts the list and merges every overlapping pair. Two intervals are also
/// merged when the gap between them is at most `tolerance`, which absorbs
/// sub-ulp gaps produced by endpoint arithmetic. Output: sorted by left
/// endpoint, pairwise disjoint, gaps strictly greater than tolerance.
inline IntervalList merge_intervals(IntervalList intervals, double tolerance = 0.0) {
    if (intervals.empty())
        throw std::invalid_argument("merge_intervals: empty interval list");
    std::sort(intervals.begin(), intervals.end(), [](const Interval& a, const Interval& b) {
        return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
    });
    IntervalList merged;
    merged.reserve(intervals.size());
    merged.push_back(intervals.front());
    for (std::size_t i = 1; i < intervals.size(); ++i) {
        const Interval& current = intervals[i];
        Interval& last = merged.back();
        if (current.lo <= last.hi + tolerance)
            last.hi = std::max(last.hi, current.hi);
        else
            merged.push_back(current);
    }
    return merged;
}

/// Distance from x to the union; 0 when x lies inside some interval.
inline double distance_to(const IntervalList& list, double x) {
    double best = std::numeric_limits<double>::infinity();
    for (const Interval& iv : list) {
        if (iv.contains(x)) return 0.0;
        best = std::min(best, x < iv.lo ? iv.lo - x : x - iv.hi);
    }
    return best;
}

/// True when x lies within `tolerance` of some interval of the list.
inline bool contains_point(const IntervalList& list, double x, double tolerance = 0.0) {
    return distance_to(list, x) <= tolerance;
}

/// Total length of a disjoint interval list.
inline double total_length(const IntervalList& list) {
    double sum = 0.0;
    for (const Interval& iv : list) sum += iv.length();
    return sum;
}

}  // namespace lorenztest
