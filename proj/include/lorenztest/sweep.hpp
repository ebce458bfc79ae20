#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <thread>
#include <vector>

#include "lorenztest/leo.hpp"
#include "lorenztest/maps.hpp"
#include "lorenztest/rng.hpp"
#include "lorenztest/transitivity.hpp"

namespace lorenztest {

/// Per-cell classification. Invalid marks cells whose parameters fail the
/// family constraints (outside the triangle, or the invariant-interval
/// conditions do not hold); the Diff values appear only in difference maps.
enum class CellClass : std::uint8_t {
    Invalid,
    NonTransitive,
    Transitive,
    NonLeo,
    Leo,
    DiffTransNotLeo,
    DiffLeoNotTrans,
};

inline const char* to_string(CellClass c) {
    switch (c) {
        case CellClass::Invalid: return "Invalid";
        case CellClass::NonTransitive: return "NonTransitive";
        case CellClass::Transitive: return "Transitive";
        case CellClass::NonLeo: return "NonLeo";
        case CellClass::Leo: return "Leo";
        case CellClass::DiffTransNotLeo: return "DiffTransNotLeo";
        case CellClass::DiffLeoNotTrans: return "DiffLeoNotTrans";
    }
    return "Invalid";
}

inline std::optional<CellClass> parse_cell_class(std::string_view s) {
    for (auto c : {CellClass::Invalid, CellClass::NonTransitive, CellClass::Transitive,
                   CellClass::NonLeo, CellClass::Leo, CellClass::DiffTransNotLeo,
                   CellClass::DiffLeoNotTrans})
        if (s == to_string(c)) return c;
    return std::nullopt;
}

enum class Plane { AlphaBeta, BC };
enum class TestKind { Transitivity, Leo, Both };
enum class ResultKind { Transitivity, Leo, Both, Diff };

/// Meshgrid over a two-parameter plane. Cells are addressed by (ix, iy) with
/// both indices ascending in parameter value; cell centers, not corners, are
/// what gets evaluated.
struct SweepGrid {
    Plane plane = Plane::AlphaBeta;
    int mesh = 100;
    double x_lo = 0.0, x_hi = 1.0;  // first axis: alpha (triangle) or b
    double y_lo = 1.0, y_hi = 2.0;  // second axis: beta (triangle) or c
    std::uint64_t master_seed = 0;

    double x_center(int ix) const { return x_lo + (x_hi - x_lo) * (ix + 0.5) / mesh; }
    double y_center(int iy) const { return y_lo + (y_hi - y_lo) * (iy + 0.5) / mesh; }

    bool same_geometry(const SweepGrid& o) const {
        return plane == o.plane && mesh == o.mesh && x_lo == o.x_lo && x_hi == o.x_hi &&
               y_lo == o.y_lo && y_hi == o.y_hi;
    }
};

inline constexpr std::uint8_t kNotRun = 255;

struct SweepResult {
    SweepGrid grid;
    ResultKind kind = ResultKind::Both;
    std::vector<CellClass> cells;           // mesh*mesh, index iy*mesh + ix
    std::vector<std::uint8_t> trans_pass;   // 0/1 or kNotRun
    std::vector<std::uint8_t> leo_pass;     // 0/1 or kNotRun
    std::vector<double> cell_seconds;
    double total_seconds = 0.0;

    std::size_t index(int ix, int iy) const {
        return static_cast<std::size_t>(iy) * static_cast<std::size_t>(grid.mesh) +
               static_cast<std::size_t>(ix);
    }
    CellClass at(int ix, int iy) const { return cells[index(ix, iy)]; }

    std::size_t count(CellClass c) const {
        std::size_t n = 0;
        for (CellClass v : cells) n += (v == c);
        return n;
    }
    std::size_t valid_count() const { return cells.size() - count(CellClass::Invalid); }
};

/// Runs fn(0..n-1) on up to `threads` workers (0 = hardware concurrency).
/// Work items are independent; the first exception, if any, is rethrown after
/// all workers have stopped.
inline void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    if (threads > n) threads = n;
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        int i;
        while (!failed.load(std::memory_order_relaxed) && (i = next.fetch_add(1)) < n) {
            try {
                fn(i);
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

/// Execution knobs shared by all sweeps.
struct SweepRun {
    TestKind kind = TestKind::Both;
    TransitivityConfig trans{};
    LeoConfig leo{};
    std::uint64_t master_seed = 0;
    int threads = 0;  // 0 = hardware concurrency
};

namespace detail {

inline ResultKind result_kind(TestKind k) {
    switch (k) {
        case TestKind::Transitivity: return ResultKind::Transitivity;
        case TestKind::Leo: return ResultKind::Leo;
        case TestKind::Both: return ResultKind::Both;
    }
    return ResultKind::Both;
}

/// Shared sweep driver. `cell_map(ix, iy)` returns the map for a valid cell
/// or nullopt for an invalid one. Per-cell seeds come from
/// (master_seed, ix, iy), so the result is identical for any thread count.
/// When both tests run, the transitivity result is recorded first and the
/// stored class reflects it; the LEO outcome lives in leo_pass.
inline SweepResult run_sweep(const SweepGrid& grid, const SweepRun& run,
                             const std::function<std::optional<MapSpec>(int, int)>& cell_map) {
    if (grid.mesh < 2) throw std::invalid_argument("sweep: mesh must be >= 2");
    if (!(grid.x_lo < grid.x_hi && grid.y_lo < grid.y_hi))
        throw std::invalid_argument("sweep: axis ranges must be ordered");

    const int mesh = grid.mesh;
    const std::size_t n_cells = static_cast<std::size_t>(mesh) * static_cast<std::size_t>(mesh);
    SweepResult result;
    result.grid = grid;
    result.kind = result_kind(run.kind);
    result.cells.assign(n_cells, CellClass::Invalid);
    result.trans_pass.assign(n_cells, kNotRun);
    result.leo_pass.assign(n_cells, kNotRun);
    result.cell_seconds.assign(n_cells, 0.0);

    const auto t_start = std::chrono::steady_clock::now();
    parallel_for(static_cast<int>(n_cells), run.threads, [&](int idx) {
        const auto c_start = std::chrono::steady_clock::now();
        const int ix = idx % mesh;
        const int iy = idx / mesh;
        const auto i = static_cast<std::size_t>(idx);

        std::optional<MapSpec> spec = cell_map(ix, iy);
        if (spec) {
            const double lo = spec->domain_lo;
            const double hi = spec->domain_hi;
            bool trans = false, leo = false;
            if (run.kind == TestKind::Transitivity || run.kind == TestKind::Both) {
                TransitivityConfig cfg = run.trans;
                cfg.seed = mix_seed(grid.master_seed, static_cast<std::uint64_t>(ix),
                                    static_cast<std::uint64_t>(iy));
                trans = num_trans_test(*spec, lo, hi, cfg);
                result.trans_pass[i] = trans ? 1 : 0;
            }
            if (run.kind == TestKind::Leo || run.kind == TestKind::Both) {
                leo = leo_test(*spec, spec->discontinuity, lo, hi, run.leo);
                result.leo_pass[i] = leo ? 1 : 0;
            }
            if (run.kind == TestKind::Leo)
                result.cells[i] = leo ? CellClass::Leo : CellClass::NonLeo;
            else
                result.cells[i] = trans ? CellClass::Transitive : CellClass::NonTransitive;
        }
        result.cell_seconds[i] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - c_start).count();
    });
    result.total_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return result;
}

}  // namespace detail

/// Scan of the beta-map parameter triangle: alpha on the first axis, beta on
/// the second. Cells whose center falls outside the triangle (beta <= 1,
/// alpha < 0 or alpha + beta > 2) are Invalid. Axis ranges default to the
/// full triangle bounding box and may be narrowed (e.g. beta >= 1.1).
inline SweepResult beta_triangle_sweep(int mesh, const SweepRun& run, double alpha_lo = 0.0,
                                       double alpha_hi = 1.0, double beta_lo = 1.0,
                                       double beta_hi = 2.0) {
    SweepGrid grid{Plane::AlphaBeta, mesh, alpha_lo, alpha_hi, beta_lo, beta_hi, run.master_seed};
    return detail::run_sweep(grid, run, [&grid](int ix, int iy) -> std::optional<MapSpec> {
        const double alpha = grid.x_center(ix);
        const double beta = grid.y_center(iy);
        if (!(beta > 1.0 && alpha >= 0.0 && alpha + beta <= 2.0)) return std::nullopt;
        return make_beta_map(beta, alpha);
    });
}

/// Scan of the (b, c) plane for the piecewise-linear CNV model. The scan
/// rectangle is the tightest box allowed by the monotonicity and position
/// conditions: b in [J_min, d], c in [d, J_max]; the remaining conditions
/// prune cells pointwise.
inline SweepResult cnv_sweep(const PlCnvParams& base, int mesh, const SweepRun& run) {
    if (!base.shape_valid())
        throw std::invalid_argument("cnv_sweep: requires m0 > 0, m1 > 0, a in (0,1)");
    auto [jmin, jmax] = plcnv_junction_points(base.m0, base.m1, base.a);
    if (!(jmin < base.d && base.d < jmax))
        throw std::invalid_argument("cnv_sweep: d must lie between the junction points");
    SweepGrid grid{Plane::BC, mesh, jmin, base.d, base.d, jmax, run.master_seed};
    return detail::run_sweep(grid, run, [&grid, &base](int ix, int iy) -> std::optional<MapSpec> {
        const double b = grid.x_center(ix);
        const double c = grid.y_center(iy);
        if (!check_invariant_conditions(base, b, c)) return std::nullopt;
        return make_plcnv_map(base, b, c);
    });
}

/// Same for the cubic CNV model: b in [x_min, d], c in [d, x_max].
inline SweepResult cnv_sweep(const NlCnvParams& base, int mesh, const SweepRun& run) {
    if (!base.shape_valid())
        throw std::invalid_argument("cnv_sweep: requires mu > 0, a in (0,1)");
    auto [xmin, xmax] = nlcnv_critical_points(base.a);
    if (!(xmin < base.d && base.d < xmax))
        throw std::invalid_argument("cnv_sweep: d must lie between the critical points");
    SweepGrid grid{Plane::BC, mesh, xmin, base.d, base.d, xmax, run.master_seed};
    return detail::run_sweep(grid, run, [&grid, &base](int ix, int iy) -> std::optional<MapSpec> {
        const double b = grid.x_center(ix);
        const double c = grid.y_center(iy);
        if (!check_invariant_conditions(base, b, c)) return std::nullopt;
        return make_nlcnv_map(base, b, c);
    });
}

namespace detail {

// Tri-state transitivity/LEO booleans out of a sweep result.
inline std::uint8_t trans_bool(const SweepResult& r, std::size_t i) {
    if (r.trans_pass[i] != kNotRun) return r.trans_pass[i];
    if (r.cells[i] == CellClass::Transitive) return 1;
    if (r.cells[i] == CellClass::NonTransitive) return 0;
    return kNotRun;
}

inline std::uint8_t leo_bool(const SweepResult& r, std::size_t i) {
    if (r.leo_pass[i] != kNotRun) return r.leo_pass[i];
    if (r.cells[i] == CellClass::Leo) return 1;
    if (r.cells[i] == CellClass::NonLeo) return 0;
    return kNotRun;
}

}  // namespace detail

/// Difference map between a transitivity-carrying result and a LEO-carrying
/// result on the same grid. Cells that are transitive but not LEO become
/// DiffTransNotLeo, LEO but not transitive become DiffLeoNotTrans; everything
/// else (agreement or invalid) is Invalid and renders white.
inline SweepResult diff_map(const SweepResult& trans_result, const SweepResult& leo_result) {
    if (!trans_result.grid.same_geometry(leo_result.grid))
        throw std::invalid_argument("diff_map: sweep grids do not match");
    if (trans_result.kind == ResultKind::Leo)
        throw std::invalid_argument("diff_map: first input carries no transitivity results");
    if (leo_result.kind == ResultKind::Transitivity)
        throw std::invalid_argument("diff_map: second input carries no LEO results");

    SweepResult out;
    out.grid = trans_result.grid;
    out.kind = ResultKind::Diff;
    const std::size_t n = trans_result.cells.size();
    out.cells.assign(n, CellClass::Invalid);
    out.trans_pass.assign(n, kNotRun);
    out.leo_pass.assign(n, kNotRun);
    out.cell_seconds.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint8_t t = detail::trans_bool(trans_result, i);
        const std::uint8_t l = detail::leo_bool(leo_result, i);
        if (t == kNotRun || l == kNotRun) continue;
        if (t == 1 && l == 0)
            out.cells[i] = CellClass::DiffTransNotLeo;
        else if (t == 0 && l == 1)
            out.cells[i] = CellClass::DiffLeoNotTrans;
    }
    return out;
}

}  // namespace lorenztest
