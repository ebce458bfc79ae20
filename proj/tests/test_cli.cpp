#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

fs::path work_dir() {
    static fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / "lorenztest_cli_tests";
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    fs::path out_file = work_dir() / ("stdout_" + std::to_string(counter++) + ".txt");
    std::string cmd = std::string(LORENZTEST_CLI_PATH) + " " + args + " > " +
                      out_file.string() + " 2> /dev/null";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_file);
    return r;
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s) n += (c == '\n');
    return n;
}

}  // namespace

TEST_CASE("test-trans reproduces the reference booleans") {
    auto off = run_cli("test-trans --family beta --beta 1.2 --alpha 0.4 --seed 1");
    CHECK(off.exit_code == 0);
    CHECK(off.out == "false\n");

    auto on = run_cli("test-trans --family beta --beta 1.2 --alpha 0.1 --seed 1");
    CHECK(on.exit_code == 0);
    CHECK(on.out == "true\n");
}

TEST_CASE("test-leo on the doubling map and the exceptional map") {
    auto yes = run_cli("test-leo --family beta --beta 2.0 --alpha 0.0");
    CHECK(yes.exit_code == 0);
    CHECK(yes.out == "true\n");

    auto no = run_cli(
        "test-leo --family beta --beta 1.4142135623730951 --alpha 0.2928932188134524");
    CHECK(no.exit_code == 0);
    CHECK(no.out == "false\n");
}

TEST_CASE("sweep writes the documented CSV layout") {
    fs::path out = work_dir() / "sweep2.csv";
    auto r = run_cli("sweep --plane triangle --family beta --mesh 2 --test trans --seed 1 --out " +
                     out.string());
    REQUIRE(r.exit_code == 0);
    std::string csv = slurp(out);
    CHECK(count_lines(csv) == 5);
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);
    CHECK(line == "alpha,beta,class");
    std::getline(is, line);
    CHECK(line.find("0.25,1.75,") == 0);
}

TEST_CASE("sweep output is byte-stable across reruns and thread counts") {
    fs::path out1 = work_dir() / "stable1.csv";
    fs::path out2 = work_dir() / "stable2.csv";
    std::string base = "sweep --plane triangle --family beta --mesh 6 --test both --seed 9 "
                       "--alpha-min 0.0 --alpha-max 0.5 --beta-min 1.2 --beta-max 1.9 ";
    REQUIRE(run_cli(base + "--threads 1 --out " + out1.string()).exit_code == 0);
    REQUIRE(run_cli(base + "--threads 2 --out " + out2.string()).exit_code == 0);
    CHECK(slurp(out1) == slurp(out2));
}

TEST_CASE("sweep PPM raster") {
    fs::path out = work_dir() / "sweep.ppm";
    auto r = run_cli("sweep --plane triangle --family beta --mesh 2 --test trans --seed 1 "
                     "--format ppm --out " + out.string());
    REQUIRE(r.exit_code == 0);
    std::string bytes = slurp(out);
    const std::string header = "P6\n2 2\n255\n";
    REQUIRE(bytes.size() == header.size() + 12);
    CHECK(bytes.substr(0, header.size()) == header);
    // top-right cell (alpha 0.75, beta 1.75) is outside the triangle: white
    const auto* px = reinterpret_cast<const unsigned char*>(bytes.data()) + header.size();
    CHECK((px[3] == 255 && px[4] == 255 && px[5] == 255));
}

TEST_CASE("bc-plane sweep runs for both CNV families") {
    fs::path out = work_dir() / "bc.csv";
    auto r = run_cli("sweep --plane bc --family plcnv --m0 0.864 --m1 0.65 --a 0.2 --d 0.4 "
                     "--mesh 4 --test trans --seed 2 --out " + out.string());
    REQUIRE(r.exit_code == 0);
    std::string csv = slurp(out);
    CHECK(csv.rfind("b,c,class", 0) == 0);
    CHECK(count_lines(csv) == 17);
}

TEST_CASE("density emits bins and support comments") {
    fs::path out = work_dir() / "density.csv";
    auto r = run_cli("density --family beta --beta 1.2 --alpha 0.4 --iters 100000 --bins 200 "
                     "--seed 3 --out " + out.string());
    REQUIRE(r.exit_code == 0);
    std::string csv = slurp(out);
    CHECK(csv.rfind("bin_center,density", 0) == 0);
    CHECK(csv.find("# support: [") != std::string::npos);
    CHECK(count_lines(csv) >= 201);
}

TEST_CASE("timeseries emits step,x rows") {
    fs::path out = work_dir() / "ts.csv";
    auto r = run_cli("timeseries --family plcnv --m0 0.864 --m1 0.65 --a 0.2 --d 0.4 "
                     "--b 0.2 --c 0.6 --x0 0.3 --n 5 --out " + out.string());
    REQUIRE(r.exit_code == 0);
    std::string csv = slurp(out);
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);
    CHECK(line == "step,x");
    std::getline(is, line);
    CHECK(line.rfind("0,0.3", 0) == 0);
    CHECK(count_lines(csv) == 6);
}

TEST_CASE("diff consumes two sweep CSVs") {
    fs::path trans_csv = work_dir() / "t.csv";
    fs::path leo_csv = work_dir() / "l.csv";
    fs::path diff_csv = work_dir() / "d.csv";
    std::string range = "--alpha-min 0.0 --alpha-max 0.3 --beta-min 1.5 --beta-max 1.9 ";
    REQUIRE(run_cli("sweep --plane triangle --family beta --mesh 4 --test trans --seed 4 " +
                    range + "--out " + trans_csv.string()).exit_code == 0);
    REQUIRE(run_cli("sweep --plane triangle --family beta --mesh 4 --test leo --seed 4 " + range +
                    "--out " + leo_csv.string()).exit_code == 0);
    auto r = run_cli("diff --in1 " + trans_csv.string() + " --in2 " + leo_csv.string() +
                     " --out " + diff_csv.string());
    REQUIRE(r.exit_code == 0);
    std::string csv = slurp(diff_csv);
    CHECK(csv.rfind("alpha,beta,class", 0) == 0);
    // in this well-behaved corner both tests agree everywhere: empty diff
    CHECK(csv.find("Diff") == std::string::npos);
    CHECK(count_lines(csv) == 17);
}

TEST_CASE("argument errors exit with 2") {
    CHECK(run_cli("test-trans --family beta --beta 1.2 --alpha 0.4 --bogus 1").exit_code == 2);
    CHECK(run_cli("test-trans --beta 1.2").exit_code == 2);        // missing --family
    CHECK(run_cli("test-trans --family beta --beta 3.0 --alpha 0.0").exit_code == 2);
    CHECK(run_cli("sweep --plane bc --family beta --mesh 4 --test trans --out /tmp/x.csv")
              .exit_code == 2);
    CHECK(run_cli("timeseries --family plcnv --b 0.2 --c 0.6 --n 5 --out /tmp/x.csv")
              .exit_code == 2);  // missing --x0
}

TEST_CASE("runtime errors exit with 1") {
    CHECK(run_cli("sweep --plane triangle --family beta --mesh 2 --test trans "
                  "--out /nonexistent_dir/x.csv").exit_code == 1);
    CHECK(run_cli("diff --in1 /nonexistent_dir/a.csv --in2 /nonexistent_dir/b.csv "
                  "--out /tmp/d.csv").exit_code == 1);
}

TEST_CASE("help exits cleanly") {
    CHECK(run_cli("--help").exit_code == 0);
}
