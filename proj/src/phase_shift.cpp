#include "scatpos/phase_shift.hpp"

#include <cmath>
#include <stdexcept>

#include "scatpos/quadrature.hpp"

namespace scatpos {

namespace {

double fraction_from(double u, double du, double k) {
    const double denom = du * du + k * k * u * u;
    if (denom < 1e-300)
        throw std::runtime_error("phi_fraction: vanishing denominator (corrupt solution)");
    return u * u / denom;
}

// (2/pi) * analytic large-k tail of int fraction * cos(kt) dk using the
// asymptote fraction ~ sin^2(kr)/k^2 = 1/(2k^2) - cos(2kr)/(2k^2).
double omega_tail(double k_cut, double r, double t) {
    const double c0 = cosine_tail_over_k2(k_cut, t);
    const double cp = cosine_tail_over_k2(k_cut, t + 2.0 * r);
    const double cm = cosine_tail_over_k2(k_cut, std::abs(t - 2.0 * r));
    return (2.0 / M_PI) * (0.5 * c0 - 0.25 * (cp + cm));
}

} // namespace

SampledFunction phi_fraction(const Potential& v, double k, const RadialGrid& grid,
                             const SolverOptions& opts) {
    const WaveSolution sol = regular_solution(v, k, grid, opts);
    std::vector<double> vals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        vals[i] = fraction_from(sol.real_value(i), sol.real_deriv(i), k);
    return SampledFunction(grid, std::move(vals));
}

double delta_via_integral(const Potential& v, double k, const RadialGrid& grid,
                          const SolverOptions& opts) {
    if (!(k > 0.0)) throw std::invalid_argument("delta_via_integral: k must be > 0");
    const SampledFunction frac = phi_fraction(v, k, grid, opts);
    std::vector<double> integrand(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) integrand[i] = v(grid[i]) * frac[i];
    return -k * integrate_samples(grid.nodes(), integrand);
}

double FractionTable::at(std::size_t ik, std::size_t ir) const {
    return data[ik * rgrid.size() + ir];
}

FractionTable build_fraction_table(const Potential& v, const RadialGrid& rgrid,
                                   const KGrid& kgrid, const SolverOptions& opts) {
    FractionTable table{rgrid, kgrid, {}};
    table.data.resize(rgrid.size() * kgrid.size());
    for (std::size_t ik = 0; ik < kgrid.size(); ++ik) {
        const double k = kgrid[ik];
        const WaveSolution sol = regular_solution(v, k, rgrid, opts);
        for (std::size_t ir = 0; ir < rgrid.size(); ++ir)
            table.data[ik * rgrid.size() + ir] =
                fraction_from(sol.real_value(ir), sol.real_deriv(ir), k);
    }
    return table;
}

PhaseShiftTable delta_table_from_fraction(const FractionTable& table, const Potential& v) {
    const std::size_t nk = table.kgrid.size(), nr = table.rgrid.size();
    std::vector<double> vr(nr);
    for (std::size_t ir = 0; ir < nr; ++ir) vr[ir] = v(table.rgrid[ir]);
    std::vector<double> delta(nk, 0.0);
    std::vector<double> integrand(nr);
    for (std::size_t ik = 0; ik < nk; ++ik) {
        const double k = table.kgrid[ik];
        if (k == 0.0) continue; // delta(0) = 0
        for (std::size_t ir = 0; ir < nr; ++ir) integrand[ir] = vr[ir] * table.at(ik, ir);
        delta[ik] = -k * integrate_samples(table.rgrid.nodes(), integrand);
    }
    return {table.kgrid, std::move(delta), PhaseShiftMethod::from_integral};
}

PhaseShiftTable delta_table_from_fit(const Potential& v, const KGrid& kgrid,
                                     const RadialGrid& grid, const SolverOptions& opts) {
    std::vector<double> delta(kgrid.size(), 0.0);
    for (std::size_t ik = 0; ik < kgrid.size(); ++ik) {
        const double k = kgrid[ik];
        if (k == 0.0) continue;
        const WaveSolution sol = regular_solution(v, k, grid, opts);
        double d = asymptotic_fit(sol, k).delta;
        // Continuity in k: stay on the branch of the previous node.
        if (ik > 0) d = delta[ik - 1] + std::remainder(d - delta[ik - 1], 2.0 * M_PI);
        delta[ik] = d;
    }
    return {kgrid, std::move(delta), PhaseShiftMethod::asymptotic_fit};
}

namespace {

// -delta(k)/k on the table's k grid; the k = 0 node (if present) is filled by
// linear extrapolation from the two smallest positive nodes.
std::vector<double> delta_over_k(const PhaseShiftTable& table) {
    const std::size_t nk = table.kgrid.size();
    std::vector<double> d(nk);
    for (std::size_t i = 0; i < nk; ++i) {
        const double k = table.kgrid[i];
        d[i] = k > 0.0 ? -table.delta[i] / k : 0.0;
    }
    if (table.kgrid[0] == 0.0 && nk > 2) {
        const double k1 = table.kgrid[1], k2 = table.kgrid[2];
        d[0] = d[1] + (d[1] - d[2]) * k1 / (k2 - k1);
    }
    return d;
}

// Coefficient of the 1/k^2 Born asymptote of -delta/k, fitted on the outer
// decile of the table.
double born_tail_coefficient(const PhaseShiftTable& table) {
    const std::size_t nk = table.kgrid.size();
    double acc = 0.0;
    std::size_t count = 0;
    for (std::size_t i = std::size_t(0.9 * double(nk)); i < nk; ++i) {
        acc += -table.delta[i] * table.kgrid[i];
        ++count;
    }
    return count ? acc / double(count) : 0.0;
}

} // namespace

GammaProfile gamma_profile_from_delta(const PhaseShiftTable& table,
                                      const std::vector<double>& tgrid) {
    const std::vector<double> d = delta_over_k(table);
    const double c2 = born_tail_coefficient(table);
    const double k_cut = table.kgrid.k_max();
    GammaProfile out{tgrid, {}, GammaMethod::from_cosine};
    out.values.reserve(tgrid.size());
    for (double t : tgrid) {
        const double finite = cos_integral(table.kgrid.nodes(), d, t);
        out.values.push_back((2.0 / M_PI) * (finite + c2 * cosine_tail_over_k2(k_cut, t)));
    }
    return out;
}

std::vector<double> omega_from_table(const FractionTable& table, std::size_t ir,
                                     const std::vector<double>& tgrid) {
    const std::size_t nk = table.kgrid.size();
    std::vector<double> row(nk);
    for (std::size_t ik = 0; ik < nk; ++ik) row[ik] = table.at(ik, ir);
    const double r = table.rgrid[ir];
    const double k_cut = table.kgrid.k_max();
    std::vector<double> out;
    out.reserve(tgrid.size());
    for (double t : tgrid) {
        const double finite = (2.0 / M_PI) * cos_integral(table.kgrid.nodes(), row, t);
        out.push_back(finite + omega_tail(k_cut, r, t));
    }
    return out;
}

SampledFunction omega(const Potential& v, double r, const RadialGrid& tgrid,
                      const KGrid& kgrid, const SolverOptions& opts) {
    std::vector<double> vals(tgrid.size(), 0.0);
    if (r > 0.0) {
        // Only the endpoint values (phi, phi') at r are needed per k.
        const RadialGrid small = RadialGrid::uniform(r, 3);
        const std::size_t nk = kgrid.size();
        std::vector<double> row(nk);
        for (std::size_t ik = 0; ik < nk; ++ik) {
            const WaveSolution sol = regular_solution(v, kgrid[ik], small, opts);
            row[ik] = fraction_from(sol.real_value(2), sol.real_deriv(2), kgrid[ik]);
        }
        for (std::size_t j = 0; j < tgrid.size(); ++j) {
            const double t = tgrid[j];
            vals[j] = (2.0 / M_PI) * cos_integral(kgrid.nodes(), row, t) +
                      omega_tail(kgrid.k_max(), r, t);
        }
    }
    return SampledFunction(tgrid, std::move(vals));
}

GammaProfile gamma_profile_from_omega(const FractionTable& table, const Potential& v,
                                      const std::vector<double>& tgrid) {
    const std::size_t nr = table.rgrid.size();
    std::vector<double> vr(nr);
    for (std::size_t ir = 0; ir < nr; ++ir) vr[ir] = v(table.rgrid[ir]);
    GammaProfile out{tgrid, std::vector<double>(tgrid.size(), 0.0), GammaMethod::from_omega};
    std::vector<double> integrand(nr);
    // Row-wise omega, accumulated into the r-quadrature per t node.
    std::vector<std::vector<double>> omega_rows(nr);
    for (std::size_t ir = 0; ir < nr; ++ir) {
        if (vr[ir] == 0.0) {
            omega_rows[ir].assign(tgrid.size(), 0.0);
            continue;
        }
        omega_rows[ir] = omega_from_table(table, ir, tgrid);
    }
    for (std::size_t j = 0; j < tgrid.size(); ++j) {
        for (std::size_t ir = 0; ir < nr; ++ir) integrand[ir] = vr[ir] * omega_rows[ir][j];
        out.values[j] = integrate_samples(table.rgrid.nodes(), integrand);
    }
    return out;
}

GammaProfile gamma_profile_from_omega(const Potential& v, const std::vector<double>& tgrid,
                                      double r_max, std::size_t nr, double k_max,
                                      std::size_t nk, const SolverOptions& opts) {
    const RadialGrid rgrid = RadialGrid::uniform(r_max, nr);
    const KGrid kgrid = KGrid::uniform(0.0, k_max, nk);
    const FractionTable table = build_fraction_table(v, rgrid, kgrid, opts);
    return gamma_profile_from_omega(table, v, tgrid);
}

PhaseShiftTable reconstruct_delta(const GammaProfile& gamma, const KGrid& kgrid) {
    std::vector<double> delta(kgrid.size(), 0.0);
    for (std::size_t i = 0; i < kgrid.size(); ++i) {
        const double k = kgrid[i];
        if (k == 0.0) continue;
        delta[i] = -k * cos_integral(gamma.tgrid, gamma.values, k);
    }
    return {kgrid, std::move(delta), PhaseShiftMethod::reconstructed};
}

DeltaRegularityReport delta_regularity_diagnostics(const PhaseShiftTable& table) {
    DeltaRegularityReport rep;
    const std::size_t nk = table.kgrid.size();
    const std::size_t i0 = table.kgrid[0] == 0.0 ? 1 : 0;
    rep.delta0 = std::abs(table.delta[i0]);
    rep.delta_kmax = std::abs(table.delta[nk - 1]);
    for (std::size_t i = 1; i < nk; ++i) {
        const double fd = (table.delta[i] - table.delta[i - 1]) /
                          (table.kgrid[i] - table.kgrid[i - 1]);
        rep.max_fd_derivative = std::max(rep.max_fd_derivative, std::abs(fd));
    }
    std::vector<double> abs_dk = delta_over_k(table);
    for (double& x : abs_dk) x = std::abs(x);
    rep.l1_integrand = trapezoid(table.kgrid.nodes(), abs_dk);
    // Tail decreasing: the last decile contributes less than the previous one.
    const std::size_t d2 = std::size_t(0.9 * double(nk));
    const std::size_t d1 = std::size_t(0.8 * double(nk));
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = d1 + 1; i <= d2 && i < nk; ++i)
        s1 += 0.5 * (abs_dk[i] + abs_dk[i - 1]) * (table.kgrid[i] - table.kgrid[i - 1]);
    for (std::size_t i = d2 + 1; i < nk; ++i)
        s2 += 0.5 * (abs_dk[i] + abs_dk[i - 1]) * (table.kgrid[i] - table.kgrid[i - 1]);
    rep.tail_decreasing = s2 < s1;
    return rep;
}

} // namespace scatpos
