#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lorenztest/density.hpp"
#include "lorenztest/sweep.hpp"

namespace lorenztest {

/// Shortest decimal representation that parses back to the same double.
/// Deterministic, so repeated runs produce byte-identical files.
inline std::string format_double(double v) {
    char buf[40];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

// ---------------------------------------------------------------------------
// Sweep CSV
// ---------------------------------------------------------------------------

/// Header `alpha,beta,class` (triangle plane) or `b,c,class` (invariant
/// interval plane); one row per cell in row-major order with row 0 at the
/// highest second-axis value. Results that carry both test outcomes gain
/// boolean columns `trans,leo`.
inline void write_sweep_csv(const SweepResult& r, std::ostream& os) {
    const bool both = r.kind == ResultKind::Both;
    const bool bc = r.grid.plane == Plane::BC;
    os << (bc ? "b,c,class" : "alpha,beta,class") << (both ? ",trans,leo" : "") << "\n";
    for (int iy = r.grid.mesh - 1; iy >= 0; --iy) {
        for (int ix = 0; ix < r.grid.mesh; ++ix) {
            const std::size_t i = r.index(ix, iy);
            os << format_double(r.grid.x_center(ix)) << ',' << format_double(r.grid.y_center(iy))
               << ',' << to_string(r.cells[i]);
            if (both)
                os << ',' << (r.trans_pass[i] == 1 ? "true" : "false") << ','
                   << (r.leo_pass[i] == 1 ? "true" : "false");
            os << "\n";
        }
    }
}

inline std::string sweep_csv_string(const SweepResult& r) {
    std::ostringstream os;
    write_sweep_csv(r, os);
    return os.str();
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ',')) out.push_back(field);
    return out;
}

inline std::uint8_t parse_bool_field(const std::string& s) {
    if (s == "true" || s == "1") return 1;
    if (s == "false" || s == "0") return 0;
    throw std::runtime_error("sweep CSV: bad boolean field '" + s + "'");
}

}  // namespace detail

/// Reads a sweep CSV back into a SweepResult. The grid geometry is
/// reconstructed from the cell-center coordinates; timing is not stored in
/// the format and comes back zeroed.
inline SweepResult read_sweep_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("sweep CSV: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    Plane plane;
    bool both = false;
    if (line == "alpha,beta,class")
        plane = Plane::AlphaBeta;
    else if (line == "alpha,beta,class,trans,leo")
        plane = Plane::AlphaBeta, both = true;
    else if (line == "b,c,class")
        plane = Plane::BC;
    else if (line == "b,c,class,trans,leo")
        plane = Plane::BC, both = true;
    else
        throw std::runtime_error("sweep CSV: unrecognized header '" + line + "'");

    std::vector<double> xs, ys;
    std::vector<CellClass> classes;
    std::vector<std::uint8_t> trans, leo;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto fields = detail::split_csv_line(line);
        if (fields.size() != (both ? 5u : 3u))
            throw std::runtime_error("sweep CSV: bad field count in row '" + line + "'");
        xs.push_back(std::stod(fields[0]));
        ys.push_back(std::stod(fields[1]));
        auto cc = parse_cell_class(fields[2]);
        if (!cc) throw std::runtime_error("sweep CSV: unknown class '" + fields[2] + "'");
        classes.push_back(*cc);
        if (both) {
            trans.push_back(detail::parse_bool_field(fields[3]));
            leo.push_back(detail::parse_bool_field(fields[4]));
        }
    }

    const std::size_t n = classes.size();
    int mesh = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    if (mesh < 2 || static_cast<std::size_t>(mesh) * static_cast<std::size_t>(mesh) != n)
        throw std::runtime_error("sweep CSV: row count is not a square mesh");

    SweepResult r;
    r.grid.plane = plane;
    r.grid.mesh = mesh;
    const double wx = xs[1] - xs[0];
    const double wy = ys[0] - ys[static_cast<std::size_t>(mesh)];
    r.grid.x_lo = xs[0] - wx / 2;
    r.grid.x_hi = xs[static_cast<std::size_t>(mesh) - 1] + wx / 2;
    r.grid.y_hi = ys[0] + wy / 2;
    r.grid.y_lo = ys[n - static_cast<std::size_t>(mesh)] - wy / 2;

    r.cells.assign(n, CellClass::Invalid);
    r.trans_pass.assign(n, kNotRun);
    r.leo_pass.assign(n, kNotRun);
    r.cell_seconds.assign(n, 0.0);

    bool any_leo_class = false, any_trans_class = false, any_diff = false;
    for (int iy = mesh - 1, row = 0; iy >= 0; --iy, ++row) {
        for (int ix = 0; ix < mesh; ++ix) {
            const auto src = static_cast<std::size_t>(row) * static_cast<std::size_t>(mesh) +
                             static_cast<std::size_t>(ix);
            const std::size_t dst = r.index(ix, iy);
            r.cells[dst] = classes[src];
            if (both) {
                if (r.cells[dst] != CellClass::Invalid) {
                    r.trans_pass[dst] = trans[src];
                    r.leo_pass[dst] = leo[src];
                }
            }
            any_leo_class |= classes[src] == CellClass::Leo || classes[src] == CellClass::NonLeo;
            any_trans_class |=
                classes[src] == CellClass::Transitive || classes[src] == CellClass::NonTransitive;
            any_diff = any_diff || classes[src] == CellClass::DiffTransNotLeo ||
                       classes[src] == CellClass::DiffLeoNotTrans;
        }
    }
    r.kind = both          ? ResultKind::Both
             : any_diff    ? ResultKind::Diff
             : any_leo_class && !any_trans_class ? ResultKind::Leo
                                                 : ResultKind::Transitivity;
    return r;
}

// ---------------------------------------------------------------------------
// Sweep PPM
// ---------------------------------------------------------------------------

/// Binary P6 raster, one pixel per cell, row 0 at the highest second-axis
/// value. Colors follow the classification legend: white invalid, yellow
/// nontransitive, red transitive, green non-LEO, black LEO, blue
/// transitive-not-LEO, red LEO-not-transitive.
inline void write_sweep_ppm(const SweepResult& r, std::ostream& os) {
    const int mesh = r.grid.mesh;
    os << "P6\n" << mesh << ' ' << mesh << "\n255\n";
    auto put = [&os](unsigned char red, unsigned char green, unsigned char blue) {
        const unsigned char px[3] = {red, green, blue};
        os.write(reinterpret_cast<const char*>(px), 3);
    };
    for (int iy = mesh - 1; iy >= 0; --iy) {
        for (int ix = 0; ix < mesh; ++ix) {
            switch (r.at(ix, iy)) {
                case CellClass::Invalid: put(255, 255, 255); break;
                case CellClass::NonTransitive: put(255, 255, 0); break;
                case CellClass::Transitive: put(255, 0, 0); break;
                case CellClass::NonLeo: put(0, 255, 0); break;
                case CellClass::Leo: put(0, 0, 0); break;
                case CellClass::DiffTransNotLeo: put(0, 0, 255); break;
                case CellClass::DiffLeoNotTrans: put(255, 0, 0); break;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Density and time-series CSV
// ---------------------------------------------------------------------------

/// `bin_center,density` rows followed by one comment line per support
/// interval.
inline void write_density_csv(const DensityEstimate& d, std::ostream& os) {
    os << "bin_center,density\n";
    for (std::size_t i = 0; i < d.density.size(); ++i) {
        const double center = (d.bin_edges[i] + d.bin_edges[i + 1]) / 2;
        os << format_double(center) << ',' << format_double(d.density[i]) << "\n";
    }
    for (const Interval& iv : d.support)
        os << "# support: [" << format_double(iv.lo) << ", " << format_double(iv.hi) << "]\n";
}

/// `step,x` rows, step counting from 0.
inline void write_timeseries_csv(const std::vector<double>& series, std::ostream& os) {
    os << "step,x\n";
    for (std::size_t i = 0; i < series.size(); ++i)
        os << i << ',' << format_double(series[i]) << "\n";
}

// ---------------------------------------------------------------------------
// File helpers
// ---------------------------------------------------------------------------

inline std::ofstream open_output_file(const std::string& path, bool binary) {
    std::ofstream os(path, binary ? std::ios::binary | std::ios::out : std::ios::out);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    return os;
}

inline SweepResult read_sweep_csv_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open input file: " + path);
    return read_sweep_csv(is);
}

}  // namespace lorenztest
