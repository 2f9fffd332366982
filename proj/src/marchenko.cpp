#include "scatpos/marchenko.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scatpos/quadrature.hpp"

namespace scatpos {

TriangularKernel::TriangularKernel(RadialGrid grid, Potential v, std::vector<double> lattice,
                                   std::size_t nx, std::size_t ny, std::size_t iterations,
                                   bool converged, double last_update)
    : grid_(std::move(grid)),
      v_(std::move(v)),
      b_(std::move(lattice)),
      nx_(nx),
      ny_(ny),
      spacing_(grid_.r_max() / double(nx)),
      iterations_(iterations),
      converged_(converged),
      last_update_(last_update) {
    if (b_.size() != (nx_ + 1) * (ny_ + 1))
        throw std::invalid_argument("TriangularKernel: lattice size mismatch");
}

double TriangularKernel::at(std::size_t i, std::size_t j) const {
    if (i > j || j >= grid_.size())
        throw std::out_of_range("TriangularKernel::at: need i <= j < grid size");
    // x-index = i + j, y-index = j - i on the half-spacing lattice.
    return lattice(i + j, j - i);
}

double TriangularKernel::interpolate(double r, double t) const {
    if (r < 0.0 || t < r) throw std::invalid_argument("TriangularKernel: need 0 <= r <= t");
    const double x = 0.5 * (r + t), y = 0.5 * (t - r);
    if (x >= double(nx_) * spacing_) return 0.0;
    const double fx = x / spacing_, fy = std::min(y, x) / spacing_;
    const std::size_t ix = std::min(std::size_t(fx), nx_ - 1);
    const std::size_t iy = std::min(std::size_t(fy), ny_ - 1);
    const double wx = fx - double(ix), wy = fy - double(iy);
    auto val = [&](std::size_t jx, std::size_t jy) {
        // Clamp below the x = y diagonal, where the lattice holds zeros.
        return lattice(jx, std::min(jy, jx));
    };
    return (1.0 - wx) * (1.0 - wy) * val(ix, iy) + wx * (1.0 - wy) * val(ix + 1, iy) +
           (1.0 - wx) * wy * val(ix, iy + 1) + wx * wy * val(ix + 1, iy + 1);
}

double TriangularKernel::max_value() const {
    return *std::max_element(b_.begin(), b_.end());
}

TriangularKernel solve_kernel(const Potential& v, const RadialGrid& grid, double tol,
                              std::size_t max_iter) {
    if (!(tol > 0.0)) throw std::invalid_argument("solve_kernel: tol must be > 0");
    if (!grid.is_uniform(1e-9))
        throw std::invalid_argument("solve_kernel: requires a uniform grid");
    const std::size_t n = grid.size();
    const std::size_t nx = 2 * (n - 1); // x in [0, t_max], spacing h/2
    const std::size_t ny = n - 1;       // y in [0, t_max/2]
    const double h2 = grid.r_max() / double(nx);
    const std::size_t stride = ny + 1;

    // Precompute V and the Born term on the lattice abscissae.
    std::vector<double> vtab(nx + 1), born(nx + 1);
    for (std::size_t i = 0; i <= nx; ++i) {
        vtab[i] = v(double(i) * h2);
        born[i] = 0.5 * v.tail_integral(double(i) * h2);
    }

    std::vector<double> b((nx + 1) * stride, 0.0), bnext((nx + 1) * stride, 0.0);
    std::vector<double> p((nx + 1) * stride, 0.0); // p[s][y] = int_0^y V(s-u) b(s,u) du

    for (std::size_t ix = 0; ix <= nx; ++ix)
        for (std::size_t iy = 0; iy <= std::min(ix, ny); ++iy) b[ix * stride + iy] = born[ix];

    if (v.is_zero()) {
        return TriangularKernel(grid, v, std::move(b), nx, ny, 1, true, 0.0);
    }

    std::size_t iter = 0;
    double update = 0.0;
    bool converged = false;
    for (iter = 1; iter <= max_iter; ++iter) {
        // Inner cumulative integral over u at fixed s.
        for (std::size_t is = 0; is <= nx; ++is) {
            const std::size_t ymax = std::min(is, ny);
            double acc = 0.0;
            double prev = vtab[is] * b[is * stride]; // u = 0
            p[is * stride] = 0.0;
            for (std::size_t iu = 1; iu <= ymax; ++iu) {
                const double cur = vtab[is - iu] * b[is * stride + iu];
                acc += 0.5 * h2 * (prev + cur);
                p[is * stride + iu] = acc;
                prev = cur;
            }
        }
        // Outer integral over s from x to the lattice edge, then add Born term.
        update = 0.0;
        for (std::size_t iy = 0; iy <= ny; ++iy) {
            double acc = 0.0;
            double prev = p[nx * stride + iy];
            bnext[nx * stride + iy] = born[nx] + acc;
            for (std::size_t ix = nx; ix-- > iy;) {
                const double cur = p[ix * stride + iy];
                acc += 0.5 * h2 * (prev + cur);
                prev = cur;
                const double val = born[ix] + acc;
                update = std::max(update, std::abs(val - b[ix * stride + iy]));
                bnext[ix * stride + iy] = val;
            }
        }
        std::swap(b, bnext);
        if (update < tol) {
            converged = true;
            break;
        }
    }
    return TriangularKernel(grid, v, std::move(b), nx, ny, std::min(iter, max_iter), converged,
                            update);
}

KernelBoundReport kernel_bound_check(const TriangularKernel& a, const Potential& v) {
    KernelBoundReport rep;
    const auto& grid = a.grid();
    const std::size_t n = grid.size();
    std::vector<double> envelope_exp(n);
    for (std::size_t i = 0; i < n; ++i) envelope_exp[i] = std::exp(v.tail_first_moment(grid[i]));
    rep.max_violation = -1e300;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double val = a.at(i, j);
            const double env = 0.5 * v.tail_integral(0.5 * (grid[i] + grid[j])) * envelope_exp[i];
            rep.max_violation = std::max(rep.max_violation, val - env);
            rep.min_value = std::min(rep.min_value, val);
        }
    }
    rep.pass = rep.max_violation <= 1e-8 && rep.min_value >= -1e-12;
    return rep;
}

WaveSolution jost_from_kernel(const TriangularKernel& a, double k) {
    const auto& grid = a.grid();
    const Potential& v = a.potential();
    const std::size_t n = grid.size();
    const double t_max = grid.r_max();
    const double h = grid[1] - grid[0];

    // Born-term continuation beyond the stored domain, sampled until the
    // integrand is negligible.
    std::vector<double> t_ext;
    {
        double t = t_max;
        for (int j = 0; j < 4000; ++j) {
            t_ext.push_back(t);
            if (v.tail_integral(0.5 * t) < 1e-16) break;
            t += h;
        }
    }

    std::vector<cdouble> f(n), df(n);
    std::vector<cdouble> row;
    std::vector<double> ext_vals;
    for (std::size_t i = 0; i < n; ++i) {
        row.assign(n - i, cdouble());
        for (std::size_t j = i; j < n; ++j) row[j - i] = a.at(i, j);
        cdouble integral(0.0, 0.0);
        if (row.size() >= 2)
            integral = osc_integral(std::span<const double>(grid.nodes().data() + i, n - i),
                                    std::span<const cdouble>(row), k);
        if (t_ext.size() >= 2) {
            ext_vals.assign(t_ext.size(), 0.0);
            for (std::size_t j = 0; j < t_ext.size(); ++j)
                ext_vals[j] = 0.5 * v.tail_integral(0.5 * (grid[i] + t_ext[j]));
            integral += osc_integral(std::span<const double>(t_ext),
                                     std::span<const double>(ext_vals), k);
        }
        f[i] = std::exp(cdouble(0.0, k * grid[i])) + integral;
    }
    // Derivative by centered finite differences (diagnostic use only).
    for (std::size_t i = 0; i < n; ++i) {
        if (i == 0)
            df[i] = (f[1] - f[0]) / (grid[1] - grid[0]);
        else if (i + 1 == n)
            df[i] = (f[i] - f[i - 1]) / (grid[i] - grid[i - 1]);
        else
            df[i] = (f[i + 1] - f[i - 1]) / (grid[i + 1] - grid[i - 1]);
    }
    return WaveSolution(grid, k, SolutionKind::jost, std::move(f), std::move(df), 0.0);
}

} // namespace scatpos
