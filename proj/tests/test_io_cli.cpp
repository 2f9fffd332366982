#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "scatpos/config.hpp"
#include "scatpos/io.hpp"
#include "scatpos/marchenko.hpp"

using namespace scatpos;
namespace fs = std::filesystem;

namespace {

fs::path tmpdir() {
    const fs::path p = fs::temp_directory_path() / "scatpos_io_test";
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("format_double round-trips arbitrary doubles") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double x = uni(rng) * std::pow(10.0, int(uni(rng) * 30));
        CHECK(std::stod(format_double(x)) == x);
    }
}

TEST_CASE("config parsing: defaults, overrides, comments, rejection") {
    const ExperimentConfig defaults = parse_config_text("");
    CHECK(defaults.family == "exponential");
    CHECK(defaults.grading == 1.0);

    const ExperimentConfig cfg = parse_config_text(
        "family = gaussian\n"
        "params.g = 2.5   # comment\n"
        "params.a = 0.5\n"
        "grid.r_max = 12\n"
        "grid.n = 241\n"
        "grid.grading = 1.02\n"
        "kgrid.k_min = 0.1\n"
        "kgrid.k_max = 4\n"
        "kgrid.n = 33\n"
        "tol = 1e-9\n"
        "seed = 77\n");
    CHECK(cfg.family == "gaussian");
    CHECK(cfg.params.at("g") == 2.5);
    CHECK(cfg.make_potential()(0.0) == 2.5);
    CHECK(cfg.n == 241);
    CHECK(cfg.k_n == 33);
    CHECK(cfg.seed == 77);
    CHECK(cfg.make_rgrid().size() == 241);
    CHECK_FALSE(cfg.make_rgrid().is_uniform(1e-9));
    CHECK(cfg.make_kgrid().k_max() == 4.0);

    CHECK_THROWS(parse_config_text("unknown.key = 1\n"));
    CHECK_THROWS(parse_config_text("tol = abc\n"));
    CHECK_THROWS(parse_config_text("grid.n = 2.5\n"));
    CHECK_THROWS(parse_config_text("tol = -1\n"));
    CHECK_THROWS(parse_config_text("just a line\n"));
}

TEST_CASE("measure serialization round-trips") {
    const RadialGrid grid = RadialGrid::uniform(10.0, 101);
    const SampledFunction density =
        SampledFunction::from_function(grid, [](double t) { return 0.3 * std::exp(-t); });
    const StieltjesMeasure m({{0.5, 0.25}, {2.0, 0.1}}, density);

    const fs::path path = tmpdir() / "measure.txt";
    write_measure(path.string(), m);
    const StieltjesMeasure back = read_measure(path.string());
    REQUIRE(back.atoms().size() == 2);
    CHECK(back.atoms()[1].location == 2.0);
    CHECK(back.atoms()[1].weight == 0.1);
    REQUIRE(back.density().size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(back.density().grid()[i] == grid[i]);
        CHECK(back.density()[i] == density[i]);
    }
}

TEST_CASE("kernel binary dump stores header and full triangle") {
    const RadialGrid grid = RadialGrid::uniform(8.0, 41);
    const TriangularKernel a = solve_kernel(Potential::exponential(1.0, 1.0), grid, 1e-10, 50);
    const fs::path path = tmpdir() / "kernel.bin";
    write_kernel_binary(path.string(), a);
    const KernelDump dump = read_kernel_binary(path.string());
    CHECK(dump.n == 41);
    CHECK(dump.r_max == 8.0);
    REQUIRE(dump.values.size() == 41 * 42 / 2);
    // Row-major triangle: first row is A(r_0, t_j).
    CHECK(dump.values[0] == a.at(0, 0));
    CHECK(dump.values[41] == a.at(1, 1));
}

TEST_CASE("csv write/read round-trip and malformed input rejection") {
    const fs::path good = tmpdir() / "cols.csv";
    write_columns_csv(good.string(), "x", "y", {0.0, 0.5, 1.0}, {1.0, 0.25, -3.5});
    const CsvTable table = read_csv(good.string());
    REQUIRE(table.headers.size() == 2);
    CHECK(table.headers[0] == "x");
    REQUIRE(table.columns[1].size() == 3);
    CHECK(table.columns[1][2] == -3.5);

    const fs::path empty = tmpdir() / "empty.csv";
    std::ofstream(empty).close();
    CHECK_THROWS(read_csv(empty.string()));

    const fs::path header_only = tmpdir() / "header_only.csv";
    std::ofstream(header_only) << "x,y\n";
    CHECK_THROWS(read_csv(header_only.string()));

    const fs::path junk = tmpdir() / "junk.csv";
    std::ofstream(junk) << "x,y\n1,banana\n";
    CHECK_THROWS(read_csv(junk.string()));
}

TEST_CASE("svg plot contains a polyline with one point per row") {
    const fs::path csv = tmpdir() / "plot.csv";
    write_columns_csv(csv.string(), "x", "y", {0.0, 1.0}, {0.0, 1.0});
    const fs::path svg = tmpdir() / "plot.svg";
    plot_csv_to_svg(csv.string(), svg.string());
    const std::string body = slurp(svg);
    CHECK(body.find("<polyline") != std::string::npos);
    const auto start = body.find("points=\"");
    REQUIRE(start != std::string::npos);
    const auto end = body.find('"', start + 8);
    const std::string pts = body.substr(start + 8, end - start - 8);
    CHECK(std::count(pts.begin(), pts.end(), ' ') == 1); // two points, one separator

    CHECK_THROWS(plot_csv_to_svg((tmpdir() / "missing.csv").string(), svg.string()));
}

TEST_CASE("identical seeds produce byte-identical positivity reports") {
    const ComplexSampler f = [](double x) { return std::exp(cdouble(0.0, 1.3 * x)); };
    PositiveTypeOptions opts;
    opts.seed = 21;
    const fs::path p1 = tmpdir() / "pos1.jsonl";
    const fs::path p2 = tmpdir() / "pos2.jsonl";
    write_positivity_jsonl(p1.string(), positive_type_check(f, 4, 6, 1e-8, opts));
    write_positivity_jsonl(p2.string(), positive_type_check(f, 4, 6, 1e-8, opts));
    CHECK(slurp(p1) == slurp(p2));
    CHECK(!slurp(p1).empty());
}
