#pragma once

#include <string>
#include <vector>

#include "scatpos/bochner.hpp"
#include "scatpos/marchenko.hpp"
#include "scatpos/phase_shift.hpp"
#include "scatpos/schrodinger.hpp"
#include "scatpos/transforms.hpp"

namespace scatpos {

// All text output uses 17 significant digits so artifacts round-trip exactly
// and can be compared byte for byte.
std::string format_double(double x);

// CSV: r, re_u, im_u, re_du, im_du.
void write_solution_csv(const std::string& path, const WaveSolution& sol);

// CSV: k, re, im, err.
void write_transform_csv(const std::string& path, const TransformResult& result);

// CSV: r, t, a over the stored triangle r <= t.
void write_kernel_csv(const std::string& path, const TriangularKernel& a);

// Binary dump: uint64 N, double r_max, then the triangle A(r_i, t_j), j >= i,
// row-major, as doubles.
void write_kernel_binary(const std::string& path, const TriangularKernel& a);
struct KernelDump {
    std::size_t n = 0;
    double r_max = 0.0;
    std::vector<double> values; // row-major triangle
};
KernelDump read_kernel_binary(const std::string& path);

// Text format: "atom <t> <w>" lines, then a "density" line, then "<r> <value>"
// pairs one per line.
void write_measure(const std::string& path, const StieltjesMeasure& m);
StieltjesMeasure read_measure(const std::string& path);

// Generic two-column CSV with caller-supplied header names.
void write_columns_csv(const std::string& path, const std::string& xname,
                       const std::string& yname, const std::vector<double>& x,
                       const std::vector<double>& y);

// JSON lines, one record per trial: points, min eigenvalue, trace, pass.
void write_positivity_jsonl(const std::string& path, const PositiveTypeReport& report);

// Positivity margins of both profile computations plus their agreement.
struct GammaPositivitySummary {
    double min_gamma_cosine = 0.0;
    double min_gamma_omega = 0.0;
    double max_gamma = 0.0;
    double agreement_residual = 0.0;     // max pointwise difference
    double reconstruction_residual = 0.0; // phase-shift roundtrip, radians
    bool pass = false;
};
void write_gamma_summary_json(const std::string& path, const GammaPositivitySummary& summary);

// Parsed numeric CSV.
struct CsvTable {
    std::vector<std::string> headers;
    std::vector<std::vector<double>> columns;
};
CsvTable read_csv(const std::string& path);

// Deterministic SVG line plot of column 1 vs column 0 on a fixed canvas.
void plot_csv_to_svg(const std::string& csv_path, const std::string& svg_path);

} // namespace scatpos
