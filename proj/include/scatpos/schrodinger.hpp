#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "scatpos/grid.hpp"
#include "scatpos/potential.hpp"
#include "scatpos/quadrature.hpp"

namespace scatpos {

enum class SolutionKind { regular, jost, auxiliary };

struct SolverOptions {
    // Finest RK4 step is chosen so that sqrt(k^2 + sup V) * h <= this.
    double target_phase_step = 0.006;
};

// Sampled solution pair (value, derivative) of the radial equation
// u'' + k^2 u = V u at fixed k. Regular solutions are real; values are kept
// complex so the Jost case shares the representation.
class WaveSolution {
public:
    WaveSolution(RadialGrid grid, double k, SolutionKind kind, std::vector<cdouble> value,
                 std::vector<cdouble> deriv, double error_estimate);

    const RadialGrid& grid() const { return grid_; }
    double k() const { return k_; }
    SolutionKind kind() const { return kind_; }
    const std::vector<cdouble>& value() const { return value_; }
    const std::vector<cdouble>& deriv() const { return deriv_; }
    double error_estimate() const { return error_estimate_; }

    double real_value(std::size_t i) const { return value_[i].real(); }
    double real_deriv(std::size_t i) const { return deriv_[i].real(); }

private:
    RadialGrid grid_;
    double k_;
    SolutionKind kind_;
    std::vector<cdouble> value_, deriv_;
    double error_estimate_;
};

// Regular solution: u(0) = 0, u'(0) = 1, integrated forward.
WaveSolution regular_solution(const Potential& v, double k, const RadialGrid& grid,
                              const SolverOptions& opts = {});

// Jost solution: u = e^{ikr}, u' = ik e^{ikr} imposed at r_max, integrated backward.
WaveSolution jost_solution(const Potential& v, double k, const RadialGrid& grid,
                           const SolverOptions& opts = {});

struct ZeroEnergyAsymptotics {
    double a0 = 0.0; // slope of the linear asymptote
    double b0 = 0.0; // intercept
    double residual = 0.0;
};

// Least-squares line fit on the outer portion of the grid.
ZeroEnergyAsymptotics zero_energy_asymptotics(const WaveSolution& phi0,
                                              double outer_fraction = 0.2);

// (phi0, chi0): zero-energy pair with W(phi0, chi0) = 1. chi0 comes from the
// quadrature representation chi0 = phi0 * int_r^inf dt/phi0^2 with the tail
// taken from the linear asymptote of phi0.
std::pair<WaveSolution, WaveSolution> zero_energy_pair(const Potential& v,
                                                       const RadialGrid& grid,
                                                       const SolverOptions& opts = {});

struct AsymptoticFit {
    double amplitude = 0.0; // A(k) > 0
    double delta = 0.0;     // phase shift, normalized to (-pi, pi]
    double residual = 0.0;  // spread of the node-wise phase over the fit window
};

// Match (u, u') of a regular solution to A sin(kr + delta) / k on outer nodes.
AsymptoticFit asymptotic_fit(const WaveSolution& sol, double k, double outer_fraction = 0.1);

// Max drift of u1 u2' - u1' u2 relative to its value at the first node.
double wronskian_drift(const WaveSolution& a, const WaveSolution& b);

double normalize_angle(double delta); // wrap into (-pi, pi]

} // namespace scatpos
