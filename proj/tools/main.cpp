#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "scatpos/acceptance.hpp"
#include "scatpos/bochner.hpp"
#include "scatpos/config.hpp"
#include "scatpos/io.hpp"
#include "scatpos/marchenko.hpp"
#include "scatpos/phase_shift.hpp"
#include "scatpos/transforms.hpp"

namespace fs = std::filesystem;
using namespace scatpos;

namespace {

struct Cli {
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    double tol = 0.0;
    bool seed_set = false, tol_set = false;
};

ExperimentConfig load_config(const Cli& cli) {
    ExperimentConfig cfg;
    if (!cli.config_path.empty()) cfg = parse_config_file(cli.config_path);
    if (cli.seed_set) cfg.seed = cli.seed;
    if (cli.tol_set) cfg.tol = cli.tol;
    return cfg;
}

fs::path out_file(const Cli& cli, const std::string& name) {
    fs::create_directories(cli.out_dir);
    return fs::path(cli.out_dir) / name;
}

int cmd_solve(const Cli& cli, double k) {
    const ExperimentConfig cfg = load_config(cli);
    const Potential v = cfg.make_potential();
    const RadialGrid grid = cfg.make_rgrid();
    write_solution_csv(out_file(cli, "regular.csv").string(), regular_solution(v, k, grid));
    write_solution_csv(out_file(cli, "jost.csv").string(), jost_solution(v, k, grid));
    return 0;
}

int cmd_kernel(const Cli& cli) {
    const ExperimentConfig cfg = load_config(cli);
    const TriangularKernel a =
        solve_kernel(cfg.make_potential(), cfg.make_rgrid(), cfg.tol, 200);
    write_kernel_csv(out_file(cli, "kernel.csv").string(), a);
    write_kernel_binary(out_file(cli, "kernel.bin").string(), a);
    return 0;
}

int cmd_transform(const Cli& cli, const std::string& measure_path) {
    const ExperimentConfig cfg = load_config(cli);
    const StieltjesMeasure alpha = read_measure(measure_path);
    const TransformResult result =
        stieltjes_transform(alpha, cfg.make_potential(), cfg.make_kgrid());
    write_transform_csv(out_file(cli, "transform.csv").string(), result);
    return 0;
}

int cmd_bochner(const Cli& cli, const std::string& measure_path, std::size_t trials) {
    const ExperimentConfig cfg = load_config(cli);
    const StieltjesMeasure alpha = read_measure(measure_path);
    write_transform_csv(out_file(cli, "bochner.csv").string(),
                        bochner_transform(alpha, cfg.make_kgrid()));
    PositiveTypeOptions opts;
    opts.seed = cfg.seed;
    const ComplexSampler sampler = [&alpha](double x) {
        // KGrid wants at least 3 nodes; only the first value is used.
        const double xx = std::abs(x);
        const KGrid padded(std::vector<double>{xx, xx + 1.0, xx + 2.0});
        const cdouble val = bochner_transform(alpha, padded).values[0];
        return x < 0.0 ? std::conj(val) : val;
    };
    const PositiveTypeReport report = positive_type_check(sampler, 8, trials, cfg.tol, opts);
    write_positivity_jsonl(out_file(cli, "positivity.jsonl").string(), report);
    return report.pass ? 0 : 1;
}

int cmd_phaseshift(const Cli& cli) {
    const ExperimentConfig cfg = load_config(cli);
    const Potential v = cfg.make_potential();
    const RadialGrid rgrid = cfg.make_rgrid();
    const KGrid kgrid = cfg.make_kgrid();
    const FractionTable table = build_fraction_table(v, rgrid, kgrid);
    const PhaseShiftTable delta = delta_table_from_fraction(table, v);
    write_columns_csv(out_file(cli, "delta.csv").string(), "k", "delta", kgrid.nodes(),
                      delta.delta);

    std::vector<double> tgrid(100);
    const double t_max = 1.5 * rgrid.r_max();
    for (std::size_t i = 0; i < tgrid.size(); ++i)
        tgrid[i] = t_max * double(i) / double(tgrid.size() - 1);
    const GammaProfile g_cos = gamma_profile_from_delta(delta, tgrid);
    const GammaProfile g_om = gamma_profile_from_omega(table, v, tgrid);
    write_columns_csv(out_file(cli, "gamma.csv").string(), "t", "gamma", tgrid, g_cos.values);

    GammaPositivitySummary summary;
    summary.min_gamma_cosine = *std::min_element(g_cos.values.begin(), g_cos.values.end());
    summary.min_gamma_omega = *std::min_element(g_om.values.begin(), g_om.values.end());
    for (std::size_t i = 0; i < tgrid.size(); ++i) {
        summary.max_gamma =
            std::max(summary.max_gamma, std::max(g_cos.values[i], g_om.values[i]));
        summary.agreement_residual =
            std::max(summary.agreement_residual, std::abs(g_cos.values[i] - g_om.values[i]));
    }
    summary.pass = summary.min_gamma_cosine >= -1e-6 * summary.max_gamma &&
                   summary.min_gamma_omega >= -1e-6 * summary.max_gamma;
    write_gamma_summary_json(out_file(cli, "gamma_summary.json").string(), summary);
    return 0;
}

int cmd_verify(const Cli& cli) {
    const ExperimentConfig cfg = load_config(cli);
    fs::create_directories(cli.out_dir);
    const std::vector<CriterionResult> results = run_acceptance(cli.out_dir, cfg.seed);
    bool all = true;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const CriterionResult& r = results[i];
        std::cout << "criterion " << (i + 1) << " " << r.name << ": "
                  << (r.pass ? "PASS" : "FAIL") << " (margin=" << format_double(r.margin)
                  << (r.detail.empty() ? "" : "; " + r.detail) << ")\n";
        all = all && r.pass;
    }
    write_acceptance_summary(out_file(cli, "summary.json").string(), results);
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Half-line scattering transforms: solutions, kernels, positivity checks"};
    app.require_subcommand(1);

    Cli cli;
    app.add_option("--config", cli.config_path, "key = value experiment config");
    app.add_option("--out", cli.out_dir, "output directory");
    app.add_option("--seed", cli.seed, "RNG seed override")
        ->each([&cli](const std::string&) { cli.seed_set = true; });
    app.add_option("--tol", cli.tol, "tolerance override")
        ->each([&cli](const std::string&) { cli.tol_set = true; });

    double solve_k = 1.0;
    CLI::App* solve = app.add_subcommand("solve", "regular and Jost solutions at one k");
    solve->add_option("--k", solve_k, "wavenumber");

    CLI::App* kernel = app.add_subcommand("kernel", "translation kernel A(r,t)");

    std::string measure_path;
    CLI::App* transform = app.add_subcommand("transform", "Stieltjes transform of a measure");
    transform->add_option("--measure", measure_path, "measure file")->required();

    std::size_t trials = 20;
    CLI::App* bochner = app.add_subcommand("bochner", "measure transform + positivity report");
    bochner->add_option("--measure", measure_path, "measure file")->required();
    bochner->add_option("--trials", trials, "Gram-matrix trials");

    CLI::App* phaseshift =
        app.add_subcommand("phaseshift", "phase shifts and positivity profile");

    CLI::App* verify = app.add_subcommand("verify", "run the acceptance suite");

    std::string plot_in, plot_out;
    CLI::App* plot = app.add_subcommand("plot", "CSV to SVG line plot");
    plot->add_option("input", plot_in, "CSV file")->required();
    plot->add_option("output", plot_out, "SVG file")->required();

    // Let the global flags (--config/--out/--seed/--tol) appear after the
    // subcommand name as well.
    for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed()) return cmd_solve(cli, solve_k);
        if (kernel->parsed()) return cmd_kernel(cli);
        if (transform->parsed()) return cmd_transform(cli, measure_path);
        if (bochner->parsed()) return cmd_bochner(cli, measure_path, trials);
        if (phaseshift->parsed()) return cmd_phaseshift(cli);
        if (verify->parsed()) return cmd_verify(cli);
        if (plot->parsed()) {
            try {
                plot_csv_to_svg(plot_in, plot_out);
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 2;
            }
            return 0;
        }
    } catch (const std::exception& e) {
        const std::string msg = e.what();
        std::cerr << "error: " << msg << "\n";
        // Input/config problems exit 2, computation failures exit 1.
        return msg.rfind("config:", 0) == 0 || msg.rfind("cannot open", 0) == 0 ? 2 : 1;
    }
    return 0;
}
