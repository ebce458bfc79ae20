// Command-line front end: single tests, parameter-plane sweeps, invariant
// densities, voltage time series and sweep difference maps.
//
// Exit codes: 0 success, 2 argument errors, 1 runtime errors. Diagnostics go
// to stderr; test results go to stdout, bulk output to files.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lorenztest/density.hpp"
#include "lorenztest/io.hpp"
#include "lorenztest/leo.hpp"
#include "lorenztest/maps.hpp"
#include "lorenztest/sweep.hpp"
#include "lorenztest/transitivity.hpp"

namespace lt = lorenztest;

namespace {

struct FamilyOptions {
    std::string family = "beta";
    double beta = 2.0;
    double alpha = 0.0;
    double m0 = 0.864;
    double m1 = 0.65;
    double a = 0.2;
    double d = 0.4;
    double mu = 1.0;
    std::optional<double> b{};
    std::optional<double> c{};
};

void add_family_options(CLI::App* cmd, FamilyOptions& fo, const std::string& families) {
    cmd->add_option("--family", fo.family, "Map family (" + families + ")")
        ->check(CLI::IsMember(CLI::detail::split(families, '|')))
        ->required();
    cmd->add_option("--beta", fo.beta, "Slope of the beta map");
    cmd->add_option("--alpha", fo.alpha, "Offset of the beta map");
    cmd->add_option("--m0", fo.m0, "Outer slope of the piecewise-linear CNV force");
    cmd->add_option("--m1", fo.m1, "Middle slope of the piecewise-linear CNV force");
    cmd->add_option("--a", fo.a, "Middle zero of the CNV force");
    cmd->add_option("--d", fo.d, "Discontinuity of the CNV voltage map");
    cmd->add_option("--mu", fo.mu, "Cubic coefficient of the nonlinear CNV force");
    cmd->add_option("--b", fo.b, "Lower endpoint of the CNV invariant interval");
    cmd->add_option("--c", fo.c, "Upper endpoint of the CNV invariant interval");
}

lt::PlCnvParams plcnv_base(const FamilyOptions& fo) {
    return {fo.m0, fo.m1, fo.a, fo.d, 0.0, 0.0};
}

lt::NlCnvParams nlcnv_base(const FamilyOptions& fo) { return {fo.mu, fo.a, fo.d, 0.0, 0.0}; }

lt::MapSpec build_map(const FamilyOptions& fo) {
    if (fo.family == "beta") return lt::make_beta_map(fo.beta, fo.alpha);
    if (fo.family == "lorenz") return lt::lorenz_like_example_map();
    if (fo.family == "expanding") return lt::expanding_example_map_spec();
    if (!fo.b || !fo.c)
        throw std::invalid_argument("--b and --c are required for CNV families");
    if (fo.family == "plcnv") {
        if (!lt::check_invariant_conditions(plcnv_base(fo), *fo.b, *fo.c))
            std::cerr << "warning: (b, c) fails the invariant-interval conditions\n";
        return lt::make_plcnv_map(plcnv_base(fo), *fo.b, *fo.c);
    }
    if (fo.family == "nlcnv") {
        if (!lt::check_invariant_conditions(nlcnv_base(fo), *fo.b, *fo.c))
            std::cerr << "warning: (b, c) fails the invariant-interval conditions\n";
        return lt::make_nlcnv_map(nlcnv_base(fo), *fo.b, *fo.c);
    }
    throw std::invalid_argument("unknown family: " + fo.family);
}

struct CliState {
    FamilyOptions fam{};
    lt::TransitivityConfig trans{};
    lt::LeoConfig leo{};
    std::uint64_t seed = 0;
    int threads = 0;

    // sweep
    std::string plane;
    int mesh = 100;
    std::string test = "both";
    std::string out;
    std::string format = "csv";
    double alpha_min = 0.0, alpha_max = 1.0, beta_min = 1.0, beta_max = 2.0;

    // density / timeseries
    std::int64_t iters = 1000000;
    std::int64_t transient = 1000;
    int bins = 1000;
    double x0 = 0.0;
    std::int64_t n = 1000;
    std::int64_t ts_transient = 0;

    // diff
    std::string in1, in2;
};

lt::TestKind parse_test_kind(const std::string& s) {
    if (s == "trans") return lt::TestKind::Transitivity;
    if (s == "leo") return lt::TestKind::Leo;
    return lt::TestKind::Both;
}

void write_sweep_output(const lt::SweepResult& result, const std::string& path,
                        const std::string& format) {
    auto os = lt::open_output_file(path, format == "ppm");
    if (format == "ppm")
        lt::write_sweep_ppm(result, os);
    else
        lt::write_sweep_csv(result, os);
    if (!os) throw std::runtime_error("failed writing output file: " + path);
}

int run_test_trans(const CliState& st) {
    lt::MapSpec map = build_map(st.fam);
    lt::TransitivityConfig cfg = st.trans;
    cfg.seed = st.seed;
    bool result = lt::num_trans_test(map, map.domain_lo, map.domain_hi, cfg);
    std::cout << (result ? "true" : "false") << "\n";
    return 0;
}

int run_test_leo(const CliState& st) {
    lt::MapSpec map = build_map(st.fam);
    bool result = lt::leo_test(map, map.discontinuity, map.domain_lo, map.domain_hi, st.leo);
    std::cout << (result ? "true" : "false") << "\n";
    return 0;
}

int run_sweep(const CliState& st) {
    lt::SweepRun run;
    run.kind = parse_test_kind(st.test);
    run.trans = st.trans;
    run.leo = st.leo;
    run.master_seed = st.seed;
    run.threads = st.threads;

    lt::SweepResult result;
    if (st.plane == "triangle") {
        if (st.fam.family != "beta")
            throw std::invalid_argument("the triangle plane requires --family beta");
        result = lt::beta_triangle_sweep(st.mesh, run, st.alpha_min, st.alpha_max, st.beta_min,
                                         st.beta_max);
    } else {
        if (st.fam.family == "plcnv")
            result = lt::cnv_sweep(plcnv_base(st.fam), st.mesh, run);
        else if (st.fam.family == "nlcnv")
            result = lt::cnv_sweep(nlcnv_base(st.fam), st.mesh, run);
        else
            throw std::invalid_argument("the bc plane requires --family plcnv or nlcnv");
    }
    write_sweep_output(result, st.out, st.format);
    std::cerr << "wrote " << st.out << " (" << result.valid_count() << " valid of "
              << result.cells.size() << " cells, " << result.total_seconds << " s)\n";
    return 0;
}

int run_density(const CliState& st) {
    lt::MapSpec map = build_map(st.fam);
    lt::DensityEstimate d = lt::empirical_density(map, map.domain_lo, map.domain_hi, st.iters,
                                                  st.transient, st.bins, st.seed);
    auto os = lt::open_output_file(st.out, false);
    lt::write_density_csv(d, os);
    if (!os) throw std::runtime_error("failed writing output file: " + st.out);
    return 0;
}

int run_timeseries(const CliState& st) {
    if (st.fam.family != "plcnv" && st.fam.family != "nlcnv")
        throw std::invalid_argument("timeseries requires --family plcnv or nlcnv");
    lt::MapSpec map = build_map(st.fam);
    std::vector<double> series = lt::voltage_time_series(map, st.x0, st.n, st.ts_transient);
    auto os = lt::open_output_file(st.out, false);
    lt::write_timeseries_csv(series, os);
    if (!os) throw std::runtime_error("failed writing output file: " + st.out);
    return 0;
}

int run_diff(const CliState& st) {
    lt::SweepResult r1 = lt::read_sweep_csv_file(st.in1);
    lt::SweepResult r2 = lt::read_sweep_csv_file(st.in2);
    lt::SweepResult d = lt::diff_map(r1, r2);
    write_sweep_output(d, st.out, st.format);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical transitivity and LEO tests for Lorenz-type interval maps"};
    app.require_subcommand(1);
    CliState st;

    auto* trans_cmd = app.add_subcommand("test-trans", "Run the orbit-coverage transitivity test");
    add_family_options(trans_cmd, st.fam, "beta|plcnv|nlcnv|lorenz|expanding");
    trans_cmd->add_option("--iters", st.trans.iterations, "Orbit length per trial");
    trans_cmd->add_option("--trials", st.trans.num_trials, "Number of random trials");
    trans_cmd->add_option("--transient", st.trans.transient, "Transient samples to drop");
    trans_cmd->add_option("--bins", st.trans.bins, "Number of coverage bins");
    trans_cmd->add_option("--seed", st.seed, "RNG seed");

    auto* leo_cmd = app.add_subcommand("test-leo", "Run the interval-image LEO test");
    add_family_options(leo_cmd, st.fam, "beta|plcnv|nlcnv|lorenz|expanding");
    leo_cmd->add_option("--subdivisions", st.leo.subdivisions, "Number of initial subintervals");
    leo_cmd->add_option("--max-iters", st.leo.max_image_iterations, "Image iteration cap");
    leo_cmd->add_option("--seed", st.seed, "Accepted for symmetry; the LEO test is deterministic");

    auto* sweep_cmd = app.add_subcommand("sweep", "Classify a two-parameter plane cell by cell");
    sweep_cmd->add_option("--plane", st.plane, "Parameter plane (triangle|bc)")
        ->check(CLI::IsMember({"triangle", "bc"}))
        ->required();
    add_family_options(sweep_cmd, st.fam, "beta|plcnv|nlcnv");
    sweep_cmd->add_option("--mesh", st.mesh, "Cells per axis")->check(CLI::Range(2, 10000))
        ->required();
    sweep_cmd->add_option("--test", st.test, "Which test(s) to run (trans|leo|both)")
        ->check(CLI::IsMember({"trans", "leo", "both"}));
    sweep_cmd->add_option("--out", st.out, "Output path")->required();
    sweep_cmd->add_option("--format", st.format, "Output format (csv|ppm)")
        ->check(CLI::IsMember({"csv", "ppm"}));
    sweep_cmd->add_option("--iters", st.trans.iterations, "Orbit length per trial");
    sweep_cmd->add_option("--trials", st.trans.num_trials, "Number of random trials");
    sweep_cmd->add_option("--transient", st.trans.transient, "Transient samples to drop");
    sweep_cmd->add_option("--bins", st.trans.bins, "Number of coverage bins");
    sweep_cmd->add_option("--subdivisions", st.leo.subdivisions, "Number of initial subintervals");
    sweep_cmd->add_option("--max-iters", st.leo.max_image_iterations, "Image iteration cap");
    sweep_cmd->add_option("--seed", st.seed, "Master seed; per-cell seeds derive from it");
    sweep_cmd->add_option("--threads", st.threads, "Worker threads (0 = all cores)");
    sweep_cmd->add_option("--alpha-min", st.alpha_min, "Triangle plane: first-axis lower bound");
    sweep_cmd->add_option("--alpha-max", st.alpha_max, "Triangle plane: first-axis upper bound");
    sweep_cmd->add_option("--beta-min", st.beta_min, "Triangle plane: second-axis lower bound");
    sweep_cmd->add_option("--beta-max", st.beta_max, "Triangle plane: second-axis upper bound");

    auto* density_cmd =
        app.add_subcommand("density", "Estimate the empirical invariant density of a long orbit");
    add_family_options(density_cmd, st.fam, "beta|plcnv|nlcnv|lorenz|expanding");
    density_cmd->add_option("--iters", st.iters, "Orbit length");
    density_cmd->add_option("--transient", st.transient, "Transient samples to drop");
    density_cmd->add_option("--bins", st.bins, "Histogram bins");
    density_cmd->add_option("--seed", st.seed, "RNG seed for the orbit start");
    density_cmd->add_option("--out", st.out, "Output CSV path")->required();

    auto* ts_cmd = app.add_subcommand("timeseries", "Record a CNV voltage trace");
    add_family_options(ts_cmd, st.fam, "plcnv|nlcnv");
    ts_cmd->add_option("--x0", st.x0, "Initial voltage")->required();
    ts_cmd->add_option("--n", st.n, "Samples to record")->required();
    ts_cmd->add_option("--transient", st.ts_transient, "Steps to discard before recording");
    ts_cmd->add_option("--out", st.out, "Output CSV path")->required();

    auto* diff_cmd = app.add_subcommand("diff", "Difference map of two sweep CSVs");
    diff_cmd->add_option("--in1", st.in1, "Transitivity sweep CSV")->required();
    diff_cmd->add_option("--in2", st.in2, "LEO sweep CSV")->required();
    diff_cmd->add_option("--out", st.out, "Output path")->required();
    diff_cmd->add_option("--format", st.format, "Output format (csv|ppm)")
        ->check(CLI::IsMember({"csv", "ppm"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand(trans_cmd)) return run_test_trans(st);
        if (app.got_subcommand(leo_cmd)) return run_test_leo(st);
        if (app.got_subcommand(sweep_cmd)) return run_sweep(st);
        if (app.got_subcommand(density_cmd)) return run_density(st);
        if (app.got_subcommand(ts_cmd)) return run_timeseries(st);
        if (app.got_subcommand(diff_cmd)) return run_diff(st);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
