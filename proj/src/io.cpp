#include "scatpos/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace scatpos {

namespace {

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
    std::ofstream out(path, mode);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path, std::ios::openmode mode = std::ios::in) {
    std::ifstream in(path, mode);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return in;
}

} // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_solution_csv(const std::string& path, const WaveSolution& sol) {
    std::ofstream out = open_out(path);
    out << "r,re_u,im_u,re_du,im_du\n";
    for (std::size_t i = 0; i < sol.grid().size(); ++i)
        out << format_double(sol.grid()[i]) << ',' << format_double(sol.value()[i].real())
            << ',' << format_double(sol.value()[i].imag()) << ','
            << format_double(sol.deriv()[i].real()) << ','
            << format_double(sol.deriv()[i].imag()) << '\n';
}

void write_transform_csv(const std::string& path, const TransformResult& result) {
    std::ofstream out = open_out(path);
    out << "k,re,im,err\n";
    for (std::size_t i = 0; i < result.kgrid.size(); ++i)
        out << format_double(result.kgrid[i]) << ',' << format_double(result.values[i].real())
            << ',' << format_double(result.values[i].imag()) << ','
            << format_double(result.errors[i]) << '\n';
}

void write_kernel_csv(const std::string& path, const TriangularKernel& a) {
    std::ofstream out = open_out(path);
    out << "r,t,a\n";
    const std::size_t n = a.grid().size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            out << format_double(a.grid()[i]) << ',' << format_double(a.grid()[j]) << ','
                << format_double(a.at(i, j)) << '\n';
}

void write_kernel_binary(const std::string& path, const TriangularKernel& a) {
    std::ofstream out = open_out(path, std::ios::binary);
    const std::uint64_t n = a.grid().size();
    const double r_max = a.grid().r_max();
    out.write(reinterpret_cast<const char*>(&n), sizeof n);
    out.write(reinterpret_cast<const char*>(&r_max), sizeof r_max);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double v = a.at(i, j);
            out.write(reinterpret_cast<const char*>(&v), sizeof v);
        }
}

KernelDump read_kernel_binary(const std::string& path) {
    std::ifstream in = open_in(path, std::ios::binary);
    KernelDump dump;
    std::uint64_t n = 0;
    in.read(reinterpret_cast<char*>(&n), sizeof n);
    in.read(reinterpret_cast<char*>(&dump.r_max), sizeof dump.r_max);
    if (!in) throw std::runtime_error("truncated kernel dump: " + path);
    dump.n = n;
    dump.values.resize(n * (n + 1) / 2);
    in.read(reinterpret_cast<char*>(dump.values.data()),
            std::streamsize(dump.values.size() * sizeof(double)));
    if (!in) throw std::runtime_error("truncated kernel dump: " + path);
    return dump;
}

void write_measure(const std::string& path, const StieltjesMeasure& m) {
    std::ofstream out = open_out(path);
    for (const auto& atom : m.atoms())
        out << "atom " << format_double(atom.location) << ' ' << format_double(atom.weight)
            << '\n';
    out << "density\n";
    for (std::size_t i = 0; i < m.density().size(); ++i)
        out << format_double(m.density().grid()[i]) << ' ' << format_double(m.density()[i])
            << '\n';
}

StieltjesMeasure read_measure(const std::string& path) {
    std::ifstream in = open_in(path);
    std::vector<StieltjesMeasure::Atom> atoms;
    std::vector<double> nodes, values;
    std::string line;
    bool in_density = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        if (!in_density) {
            std::string tag;
            ss >> tag;
            if (tag == "atom") {
                StieltjesMeasure::Atom atom{};
                if (!(ss >> atom.location >> atom.weight))
                    throw std::runtime_error("bad atom line in " + path);
                atoms.push_back(atom);
                continue;
            }
            if (tag == "density") {
                in_density = true;
                continue;
            }
            throw std::runtime_error("unexpected line in measure file: " + line);
        }
        double r, v;
        if (!(ss >> r >> v)) throw std::runtime_error("bad density line in " + path);
        nodes.push_back(r);
        values.push_back(v);
    }
    if (nodes.empty()) throw std::runtime_error("measure file has no density block: " + path);
    SampledFunction density(RadialGrid(std::move(nodes)), std::move(values));
    // Whether the density is signed is recomputed, not stored.
    const bool is_signed =
        std::any_of(density.values().begin(), density.values().end(),
                    [](double v) { return v < 0.0; });
    return StieltjesMeasure(std::move(atoms), std::move(density), is_signed);
}

void write_columns_csv(const std::string& path, const std::string& xname,
                       const std::string& yname, const std::vector<double>& x,
                       const std::vector<double>& y) {
    if (x.size() != y.size())
        throw std::invalid_argument("write_columns_csv: column length mismatch");
    std::ofstream out = open_out(path);
    out << xname << ',' << yname << '\n';
    for (std::size_t i = 0; i < x.size(); ++i)
        out << format_double(x[i]) << ',' << format_double(y[i]) << '\n';
}

void write_positivity_jsonl(const std::string& path, const PositiveTypeReport& report) {
    std::ofstream out = open_out(path);
    for (const auto& trial : report.records) {
        out << "{\"points\":[";
        for (std::size_t i = 0; i < trial.points.size(); ++i) {
            if (i) out << ',';
            out << format_double(trial.points[i]);
        }
        out << "],\"min_eigenvalue\":" << format_double(trial.min_eigenvalue)
            << ",\"trace\":" << format_double(trial.trace)
            << ",\"pass\":" << (trial.pass ? "true" : "false") << "}\n";
    }
}

void write_gamma_summary_json(const std::string& path, const GammaPositivitySummary& summary) {
    std::ofstream out = open_out(path);
    out << "{\n"
        << "  \"min_gamma_cosine\": " << format_double(summary.min_gamma_cosine) << ",\n"
        << "  \"min_gamma_omega\": " << format_double(summary.min_gamma_omega) << ",\n"
        << "  \"max_gamma\": " << format_double(summary.max_gamma) << ",\n"
        << "  \"agreement_residual\": " << format_double(summary.agreement_residual) << ",\n"
        << "  \"reconstruction_residual\": " << format_double(summary.reconstruction_residual)
        << ",\n"
        << "  \"pass\": " << (summary.pass ? "true" : "false") << "\n"
        << "}\n";
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in = open_in(path);
    CsvTable table;
    std::string line;
    if (!std::getline(in, line) || line.empty())
        throw std::runtime_error("empty CSV: " + path);
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) table.headers.push_back(cell);
    table.columns.resize(table.headers.size());
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        for (std::size_t c = 0; c < table.headers.size(); ++c) {
            if (!std::getline(ls, cell, ','))
                throw std::runtime_error("short CSV row in " + path);
            std::size_t used = 0;
            double v;
            try {
                v = std::stod(cell, &used);
            } catch (const std::exception&) {
                throw std::runtime_error("non-numeric CSV cell in " + path);
            }
            if (used != cell.size())
                throw std::runtime_error("non-numeric CSV cell in " + path);
            table.columns[c].push_back(v);
        }
    }
    if (table.columns.empty() || table.columns[0].empty())
        throw std::runtime_error("CSV has no data rows: " + path);
    return table;
}

void plot_csv_to_svg(const std::string& csv_path, const std::string& svg_path) {
    const CsvTable table = read_csv(csv_path);
    if (table.columns.size() < 2)
        throw std::runtime_error("plot needs at least two columns: " + csv_path);
    const std::vector<double>& x = table.columns[0];
    const std::vector<double>& y = table.columns[1];

    const double w = 640.0, h = 480.0, margin = 60.0;
    double x_lo = *std::min_element(x.begin(), x.end());
    double x_hi = *std::max_element(x.begin(), x.end());
    double y_lo = *std::min_element(y.begin(), y.end());
    double y_hi = *std::max_element(y.begin(), y.end());
    if (x_hi == x_lo) x_hi = x_lo + 1.0;
    if (y_hi == y_lo) y_hi = y_lo + 1.0;
    const auto px = [&](double v) {
        return margin + (v - x_lo) / (x_hi - x_lo) * (w - 2.0 * margin);
    };
    const auto py = [&](double v) {
        return h - margin - (v - y_lo) / (y_hi - y_lo) * (h - 2.0 * margin);
    };

    std::ofstream out = open_out(svg_path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
           "viewBox=\"0 0 640 480\">\n";
    out << "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
    // Axes along the data bounding box.
    out << "<line x1=\"" << format_double(margin) << "\" y1=\"" << format_double(h - margin)
        << "\" x2=\"" << format_double(w - margin) << "\" y2=\"" << format_double(h - margin)
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << format_double(margin) << "\" y1=\"" << format_double(margin)
        << "\" x2=\"" << format_double(margin) << "\" y2=\"" << format_double(h - margin)
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << format_double(w / 2.0) << "\" y=\"" << format_double(h - 15.0)
        << "\" text-anchor=\"middle\" font-size=\"14\">" << table.headers[0] << "</text>\n";
    out << "<text x=\"20\" y=\"" << format_double(h / 2.0)
        << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 20 "
        << format_double(h / 2.0) << ")\">" << table.headers[1] << "</text>\n";
    out << "<text x=\"" << format_double(margin) << "\" y=\"" << format_double(h - margin + 20)
        << "\" font-size=\"12\">" << format_double(x_lo) << "</text>\n";
    out << "<text x=\"" << format_double(w - margin) << "\" y=\""
        << format_double(h - margin + 20) << "\" text-anchor=\"end\" font-size=\"12\">"
        << format_double(x_hi) << "</text>\n";
    out << "<text x=\"" << format_double(margin - 5) << "\" y=\"" << format_double(h - margin)
        << "\" text-anchor=\"end\" font-size=\"12\">" << format_double(y_lo) << "</text>\n";
    out << "<text x=\"" << format_double(margin - 5) << "\" y=\"" << format_double(margin + 5)
        << "\" text-anchor=\"end\" font-size=\"12\">" << format_double(y_hi) << "</text>\n";
    out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) out << ' ';
        out << format_double(px(x[i])) << ',' << format_double(py(y[i]));
    }
    out << "\"/>\n</svg>\n";
}

} // namespace scatpos
