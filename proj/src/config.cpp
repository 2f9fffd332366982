#include "scatpos/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace scatpos {

Potential ExperimentConfig::make_potential() const {
    return scatpos::make_potential(family, params);
}

RadialGrid ExperimentConfig::make_rgrid() const {
    if (grading == 1.0) return RadialGrid::uniform(r_max, n);
    return RadialGrid::graded(r_max, n, grading);
}

KGrid ExperimentConfig::make_kgrid() const { return KGrid::uniform(k_min, k_max, k_n); }

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_number(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double v;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        throw std::runtime_error("config: non-numeric value for " + key + ": " + value);
    }
    if (used != value.size())
        throw std::runtime_error("config: non-numeric value for " + key + ": " + value);
    return v;
}

std::size_t parse_count(const std::string& key, const std::string& value) {
    const double v = parse_number(key, value);
    if (v < 1.0 || v != double(std::size_t(v)))
        throw std::runtime_error("config: " + key + " must be a positive integer");
    return std::size_t(v);
}

} // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: line " + std::to_string(lineno) +
                                     " is not key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::runtime_error("config: empty key or value at line " +
                                     std::to_string(lineno));

        if (key == "family") {
            cfg.family = value;
        } else if (key.rfind("params.", 0) == 0) {
            cfg.params[key.substr(7)] = parse_number(key, value);
        } else if (key == "grid.r_max") {
            cfg.r_max = parse_number(key, value);
        } else if (key == "grid.n") {
            cfg.n = parse_count(key, value);
        } else if (key == "grid.grading") {
            cfg.grading = parse_number(key, value);
        } else if (key == "kgrid.k_min") {
            cfg.k_min = parse_number(key, value);
        } else if (key == "kgrid.k_max") {
            cfg.k_max = parse_number(key, value);
        } else if (key == "kgrid.n") {
            cfg.k_n = parse_count(key, value);
        } else if (key == "tol") {
            cfg.tol = parse_number(key, value);
        } else if (key == "seed") {
            const double v = parse_number(key, value);
            if (v < 0.0) throw std::runtime_error("config: seed must be non-negative");
            cfg.seed = std::uint64_t(v);
        } else {
            throw std::runtime_error("config: unknown key: " + key);
        }
    }
    if (cfg.tol <= 0.0) throw std::runtime_error("config: tol must be > 0");
    if (cfg.grading < 1.0) throw std::runtime_error("config: grid.grading must be >= 1");
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

} // namespace scatpos
