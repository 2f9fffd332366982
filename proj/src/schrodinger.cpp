#include "scatpos/schrodinger.hpp"

#include <cmath>
#include <stdexcept>

namespace scatpos {

WaveSolution::WaveSolution(RadialGrid grid, double k, SolutionKind kind,
                           std::vector<cdouble> value, std::vector<cdouble> deriv,
                           double error_estimate)
    : grid_(std::move(grid)),
      k_(k),
      kind_(kind),
      value_(std::move(value)),
      deriv_(std::move(deriv)),
      error_estimate_(error_estimate) {
    if (value_.size() != grid_.size() || deriv_.size() != grid_.size())
        throw std::invalid_argument("WaveSolution: array sizes must match the grid");
}

namespace {

template <typename T>
struct State {
    T u, w; // value, derivative
};

// One classical RK4 step of u'' = (V - k^2) u. The endpoint stages evaluate V
// nudged slightly into the step interior, so a jump of V at a node boundary is
// always sampled from the correct side (and r never strays below 0 through
// rounding in backward runs).
template <typename T>
State<T> rk4_step(const Potential& v, double k2, double r, double h, State<T> y) {
    auto rhs = [&](double rr, const State<T>& s) -> State<T> {
        return {s.w, (v(rr) - k2) * s.u};
    };
    const double nudge = 1e-9 * h;
    const State<T> k1 = rhs(r + nudge, y);
    const State<T> k2s = rhs(r + 0.5 * h, {y.u + 0.5 * h * k1.u, y.w + 0.5 * h * k1.w});
    const State<T> k3 = rhs(r + 0.5 * h, {y.u + 0.5 * h * k2s.u, y.w + 0.5 * h * k2s.w});
    const State<T> k4 = rhs(r + h - nudge, {y.u + h * k3.u, y.w + h * k3.w});
    return {y.u + h / 6.0 * (k1.u + 2.0 * k2s.u + 2.0 * k3.u + k4.u),
            y.w + h / 6.0 * (k1.w + 2.0 * k2s.w + 2.0 * k3.w + k4.w)};
}

// Advance across one grid interval with step doubling: every substep is taken
// once at h and twice at h/2; the difference feeds the error estimate and a
// local Richardson correction.
template <typename T>
State<T> advance(const Potential& v, double k2, double r0, double r1, State<T> y,
                 int substeps, double& err) {
    const double h = (r1 - r0) / double(substeps);
    double r = r0;
    for (int s = 0; s < substeps; ++s) {
        const State<T> coarse = rk4_step(v, k2, r, h, y);
        State<T> fine = rk4_step(v, k2, r, 0.5 * h, y);
        fine = rk4_step(v, k2, r + 0.5 * h, 0.5 * h, fine);
        const double du = std::abs(fine.u - coarse.u);
        const double dw = std::abs(fine.w - coarse.w);
        err += (du + dw) / 15.0;
        y = {fine.u + (fine.u - coarse.u) / 15.0, fine.w + (fine.w - coarse.w) / 15.0};
        r += h;
    }
    return y;
}

template <typename T>
WaveSolution integrate(const Potential& v, double k, const RadialGrid& grid,
                       SolutionKind kind, State<T> boundary, bool backward,
                       const SolverOptions& opts) {
    const std::size_t n = grid.size();
    const double k2 = k * k;
    const double freq = std::sqrt(k2 + v.sup_bound()) + 1e-12;
    std::vector<cdouble> value(n), deriv(n);
    double err = 0.0;
    State<T> y = boundary;
    auto store = [&](std::size_t i) {
        value[i] = cdouble(y.u);
        deriv[i] = cdouble(y.w);
        if (!std::isfinite(std::abs(cdouble(y.u))) || !std::isfinite(std::abs(cdouble(y.w))))
            throw std::runtime_error("schrodinger: solver diverged (non-finite state)");
    };
    if (!backward) {
        store(0);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double h = grid[i + 1] - grid[i];
            const int sub = std::max(1, int(std::ceil(h * freq / (2.0 * opts.target_phase_step))));
            y = advance(v, k2, grid[i], grid[i + 1], y, sub, err);
            store(i + 1);
        }
    } else {
        store(n - 1);
        for (std::size_t i = n - 1; i-- > 0;) {
            const double h = grid[i + 1] - grid[i];
            const int sub = std::max(1, int(std::ceil(h * freq / (2.0 * opts.target_phase_step))));
            y = advance(v, k2, grid[i + 1], grid[i], y, sub, err);
            store(i);
        }
    }
    return WaveSolution(grid, k, kind, std::move(value), std::move(deriv), err);
}

} // namespace

WaveSolution regular_solution(const Potential& v, double k, const RadialGrid& grid,
                              const SolverOptions& opts) {
    if (k < 0.0) throw std::invalid_argument("regular_solution: k must be >= 0");
    return integrate<double>(v, k, grid, SolutionKind::regular, {0.0, 1.0}, false, opts);
}

WaveSolution jost_solution(const Potential& v, double k, const RadialGrid& grid,
                           const SolverOptions& opts) {
    if (k < 0.0) throw std::invalid_argument("jost_solution: k must be >= 0");
    const double rmax = grid.r_max();
    const cdouble f = std::exp(cdouble(0.0, k * rmax));
    const cdouble df = cdouble(0.0, k) * f;
    return integrate<cdouble>(v, k, grid, SolutionKind::jost, {f, df}, true, opts);
}

ZeroEnergyAsymptotics zero_energy_asymptotics(const WaveSolution& phi0, double outer_fraction) {
    const auto& r = phi0.grid().nodes();
    const std::size_t n = r.size();
    const std::size_t i0 = std::size_t(double(n) * (1.0 - outer_fraction));
    if (i0 + 2 >= n) throw std::invalid_argument("zero_energy_asymptotics: fit window too small");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = double(n - i0);
    for (std::size_t i = i0; i < n; ++i) {
        sx += r[i];
        sy += phi0.real_value(i);
        sxx += r[i] * r[i];
        sxy += r[i] * phi0.real_value(i);
    }
    ZeroEnergyAsymptotics out;
    const double det = m * sxx - sx * sx;
    out.a0 = (m * sxy - sx * sy) / det;
    out.b0 = (sxx * sy - sx * sxy) / det;
    double ss = 0.0;
    for (std::size_t i = i0; i < n; ++i) {
        const double res = phi0.real_value(i) - (out.a0 * r[i] + out.b0);
        ss += res * res;
    }
    out.residual = std::sqrt(ss / m);
    return out;
}

std::pair<WaveSolution, WaveSolution> zero_energy_pair(const Potential& v,
                                                       const RadialGrid& grid,
                                                       const SolverOptions& opts) {
    WaveSolution phi0 = regular_solution(v, 0.0, grid, opts);
    const std::size_t n = grid.size();
    for (std::size_t i = 1; i < n; ++i)
        if (!(phi0.real_value(i) > 0.0))
            throw std::runtime_error("zero_energy_pair: phi0 has a zero for r > 0");

    const ZeroEnergyAsymptotics asym = zero_energy_asymptotics(phi0);
    // Analytic tail of int_r^inf dt/phi0^2 using phi0 ~ A0 t + B0, which fixes
    // chi0 = phi0 * tail and chi0' = phi0' * tail - 1/phi0 at r_max. From there
    // chi0 is recovered by backward integration of the same equation; this
    // avoids quadrature of 1/phi0^2, which is too singular near the origin.
    const double tail = 1.0 / (asym.a0 * (asym.a0 * grid.r_max() + asym.b0));
    const double pr = phi0.real_value(n - 1);
    const State<double> boundary = {pr * tail, phi0.real_deriv(n - 1) * tail - 1.0 / pr};
    WaveSolution raw = integrate<double>(v, 0.0, grid, SolutionKind::auxiliary, boundary,
                                         true, opts);

    std::vector<cdouble> chi(raw.value().begin(), raw.value().end());
    std::vector<cdouble> dchi(raw.deriv().begin(), raw.deriv().end());
    chi[0] = 1.0; // chi0(0) = 1 by normalization
    WaveSolution chi0(grid, 0.0, SolutionKind::auxiliary, std::move(chi), std::move(dchi),
                      raw.error_estimate());
    return {std::move(phi0), std::move(chi0)};
}

double normalize_angle(double delta) {
    delta = std::remainder(delta, 2.0 * M_PI);
    if (delta <= -M_PI) delta += 2.0 * M_PI;
    return delta;
}

AsymptoticFit asymptotic_fit(const WaveSolution& sol, double k, double outer_fraction) {
    if (!(k > 0.0)) throw std::invalid_argument("asymptotic_fit: k must be > 0");
    const auto& r = sol.grid().nodes();
    const std::size_t n = r.size();
    if (k * sol.grid().r_max() < 2.0 * M_PI)
        throw std::runtime_error("asymptotic_fit: k * r_max < 2*pi, fit unstable");
    const std::size_t i0 = std::size_t(double(n) * (1.0 - outer_fraction));
    // u = A sin(kr + delta)/k, u' = A cos(kr + delta) with A > 0.
    double ref = 0.0;
    double sum = 0.0, amp = 0.0, lo = 0.0, hi = 0.0;
    std::size_t m = 0;
    for (std::size_t i = i0; i < n; ++i) {
        const double u = sol.real_value(i), du = sol.real_deriv(i);
        double d = std::atan2(k * u, du) - k * r[i];
        if (m == 0) {
            ref = normalize_angle(d);
            d = ref;
        } else {
            d = ref + std::remainder(d - ref, 2.0 * M_PI);
        }
        sum += d;
        lo = (m == 0) ? d : std::min(lo, d);
        hi = (m == 0) ? d : std::max(hi, d);
        amp += std::hypot(du, k * u);
        ++m;
    }
    AsymptoticFit fit;
    fit.delta = normalize_angle(sum / double(m));
    fit.amplitude = amp / double(m);
    fit.residual = hi - lo;
    return fit;
}

double wronskian_drift(const WaveSolution& a, const WaveSolution& b) {
    if (a.grid().size() != b.grid().size())
        throw std::invalid_argument("wronskian_drift: grids differ");
    const std::size_t n = a.grid().size();
    const cdouble w0 = a.value()[0] * b.deriv()[0] - a.deriv()[0] * b.value()[0];
    double drift = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const cdouble w = a.value()[i] * b.deriv()[i] - a.deriv()[i] * b.value()[i];
        drift = std::max(drift, std::abs(w - w0));
    }
    return drift;
}

} // namespace scatpos
