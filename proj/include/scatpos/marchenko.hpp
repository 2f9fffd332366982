#pragma once

#include <cstddef>
#include <vector>

#include "scatpos/grid.hpp"
#include "scatpos/potential.hpp"
#include "scatpos/schrodinger.hpp"

namespace scatpos {

// Translation kernel A(r, t) on 0 <= r <= t <= t_max. Internally the solve
// works in the characteristic variables x = (r+t)/2, y = (t-r)/2 on a lattice
// with half the grid spacing, so every (r_i, t_j) pair sits exactly on a
// lattice point. Requires a uniform grid.
class TriangularKernel {
public:
    TriangularKernel(RadialGrid grid, Potential v, std::vector<double> lattice,
                     std::size_t nx, std::size_t ny, std::size_t iterations, bool converged,
                     double last_update);

    const RadialGrid& grid() const { return grid_; }
    const Potential& potential() const { return v_; }

    // A(r_i, t_j), requires i <= j.
    double at(std::size_t i, std::size_t j) const;
    // Bilinear interpolation; zero beyond the stored domain.
    double interpolate(double r, double t) const;

    std::size_t iteration_count() const { return iterations_; }
    bool converged() const { return converged_; }
    double last_update() const { return last_update_; }
    double max_value() const;

    // Characteristic-variable lattice (spacing = grid spacing / 2).
    std::size_t nx() const { return nx_; }
    std::size_t ny() const { return ny_; }
    double lattice_spacing() const { return spacing_; }
    double lattice(std::size_t ix, std::size_t iy) const { return b_[ix * (ny_ + 1) + iy]; }

private:
    RadialGrid grid_;
    Potential v_;
    std::vector<double> b_; // row-major (nx+1) x (ny+1), zero where y > x
    std::size_t nx_, ny_;
    double spacing_;
    std::size_t iterations_;
    bool converged_;
    double last_update_;
};

// Picard iteration on the kernel integral equation, starting from the Born
// term Q(x) = (1/2) int_x^inf V. All iterates are non-negative for V >= 0.
TriangularKernel solve_kernel(const Potential& v, const RadialGrid& grid, double tol,
                              std::size_t max_iter);

struct KernelBoundReport {
    double max_violation = 0.0; // max over nodes of A - envelope
    double min_value = 0.0;     // most negative stored value (should be >= 0)
    bool pass = false;
};

// Pointwise comparison against Q((r+t)/2) * exp(int_r^inf u V du).
KernelBoundReport kernel_bound_check(const TriangularKernel& a, const Potential& v);

// f(k,r) = e^{ikr} + int_r^inf A(r,t) e^{ikt} dt, with the Born-term tail
// appended analytically beyond the stored domain.
WaveSolution jost_from_kernel(const TriangularKernel& a, double k);

} // namespace scatpos
