#pragma once

#include <vector>

#include "scatpos/grid.hpp"
#include "scatpos/potential.hpp"
#include "scatpos/schrodinger.hpp"
#include "scatpos/transforms.hpp"

namespace scatpos {

enum class PhaseShiftMethod { asymptotic_fit, from_integral, reconstructed };
enum class GammaMethod { from_cosine, from_omega };

struct PhaseShiftTable {
    KGrid kgrid;
    std::vector<double> delta; // radians, continuous in k
    PhaseShiftMethod method;
};

struct GammaProfile {
    std::vector<double> tgrid;
    std::vector<double> values;
    GammaMethod method;
};

// phi^2 / (phi'^2 + k^2 phi^2) for the regular solution at k.
SampledFunction phi_fraction(const Potential& v, double k, const RadialGrid& grid,
                             const SolverOptions& opts = {});

// delta(k) = -k int V(r) phi^2/(phi'^2 + k^2 phi^2) dr.
double delta_via_integral(const Potential& v, double k, const RadialGrid& grid,
                          const SolverOptions& opts = {});

// The fraction tabulated over a k-grid and the full radial grid; one ODE solve
// per k node yields the whole row. Shared by the delta, omega and Gamma paths.
struct FractionTable {
    RadialGrid rgrid;
    KGrid kgrid;
    std::vector<double> data; // k-major: data[ik * rgrid.size() + ir]
    double at(std::size_t ik, std::size_t ir) const;
};

FractionTable build_fraction_table(const Potential& v, const RadialGrid& rgrid,
                                   const KGrid& kgrid, const SolverOptions& opts = {});

PhaseShiftTable delta_table_from_fraction(const FractionTable& table, const Potential& v);
PhaseShiftTable delta_table_from_fit(const Potential& v, const KGrid& kgrid,
                                     const RadialGrid& grid, const SolverOptions& opts = {});

// Gamma(t) = (2/pi) int_0^inf (-delta(k)/k) cos(kt) dk; the 1/k^2 Born tail
// beyond the tabulated range is appended analytically.
GammaProfile gamma_profile_from_delta(const PhaseShiftTable& table,
                                      const std::vector<double>& tgrid);

// omega(r,t) = (2/pi) int_0^inf fraction(k,r) cos(kt) dk at a single r.
SampledFunction omega(const Potential& v, double r, const RadialGrid& tgrid,
                      const KGrid& kgrid, const SolverOptions& opts = {});

// Same cosine transform, taken row-wise from a prebuilt table.
std::vector<double> omega_from_table(const FractionTable& table, std::size_t ir,
                                     const std::vector<double>& tgrid);

// Gamma(t) = int omega(r,t) V(r) dr over the table's radial grid.
GammaProfile gamma_profile_from_omega(const FractionTable& table, const Potential& v,
                                      const std::vector<double>& tgrid);
GammaProfile gamma_profile_from_omega(const Potential& v, const std::vector<double>& tgrid,
                                      double r_max, std::size_t nr, double k_max,
                                      std::size_t nk, const SolverOptions& opts = {});

// delta(k) = -k int Gamma(t) cos(kt) dt.
PhaseShiftTable reconstruct_delta(const GammaProfile& gamma, const KGrid& kgrid);

struct DeltaRegularityReport {
    double delta0 = 0.0;             // |delta| near k = 0
    double delta_kmax = 0.0;         // |delta| at the last node
    double max_fd_derivative = 0.0;  // bound on finite-difference d delta/dk
    double l1_integrand = 0.0;       // int_0^Kmax |delta(k)/k| dk
    bool tail_decreasing = false;
};

DeltaRegularityReport delta_regularity_diagnostics(const PhaseShiftTable& table);

} // namespace scatpos
