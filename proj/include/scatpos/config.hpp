#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "scatpos/grid.hpp"
#include "scatpos/potential.hpp"

namespace scatpos {

// Key/value experiment description. Recognized keys:
//   family        potential family (zero | exponential | square_barrier | gaussian)
//   params.<p>    numeric parameters passed to the family constructor
//   grid.r_max    radial extent
//   grid.n        node count
//   grid.grading  geometric spacing ratio; 1 means uniform
//   kgrid.k_min, kgrid.k_max, kgrid.n
//   tol           generic tolerance for the requested operation
//   seed          RNG seed for randomized checks
struct ExperimentConfig {
    std::string family = "exponential";
    std::map<std::string, double> params = {{"g", 1.0}, {"a", 1.0}};
    double r_max = 15.0;
    std::size_t n = 601;
    double grading = 1.0;
    double k_min = 0.0;
    double k_max = 10.0;
    std::size_t k_n = 101;
    double tol = 1e-8;
    std::uint64_t seed = 1234;

    Potential make_potential() const;
    RadialGrid make_rgrid() const;
    KGrid make_kgrid() const;
};

// Lines of "key = value"; '#' starts a comment. Unknown keys are rejected.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

} // namespace scatpos
