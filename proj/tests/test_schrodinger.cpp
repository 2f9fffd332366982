#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "scatpos/schrodinger.hpp"

using namespace scatpos;

namespace {

// Closed-form regular solution for the square barrier (height h on [0,w]):
// inside, u'' = (h - k^2) u with u(0)=0, u'(0)=1; outside, free propagation
// matched continuously at r = w.
struct BarrierOracle {
    double h, w, k;
    void inside(double r, double& u, double& du) const {
        const double m2 = h - k * k;
        if (std::abs(m2) < 1e-14) {
            u = r;
            du = 1.0;
        } else if (m2 > 0.0) {
            const double m = std::sqrt(m2);
            u = std::sinh(m * r) / m;
            du = std::cosh(m * r);
        } else {
            const double q = std::sqrt(-m2);
            u = std::sin(q * r) / q;
            du = std::cos(q * r);
        }
    }
    double value(double r) const {
        double u, du;
        if (r <= w) {
            inside(r, u, du);
            return u;
        }
        inside(w, u, du);
        if (k == 0.0) return u + du * (r - w);
        return u * std::cos(k * (r - w)) + du * std::sin(k * (r - w)) / k;
    }
};

} // namespace

TEST_CASE("free regular solution is sin(kr)/k") {
    const RadialGrid grid = RadialGrid::uniform(10.0, 1001);
    for (double k : {0.5, 2.0, 5.0}) {
        const WaveSolution sol = regular_solution(Potential::zero(), k, grid);
        double err = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            err = std::max(err, std::abs(sol.real_value(i) - std::sin(k * grid[i]) / k));
        CHECK(err <= 1e-10);
    }
}

TEST_CASE("free regular solution at k=0 is r") {
    const RadialGrid grid = RadialGrid::uniform(10.0, 501);
    const WaveSolution sol = regular_solution(Potential::zero(), 0.0, grid);
    for (std::size_t i = 0; i < grid.size(); i += 50) {
        CHECK(sol.real_value(i) == doctest::Approx(grid[i]).epsilon(1e-12));
        CHECK(sol.real_deriv(i) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("square barrier regular solution matches piecewise closed form") {
    const double h = 1.0, w = 1.0;
    const RadialGrid grid = RadialGrid::uniform(8.0, 1601);
    for (double k : {1.0, 0.6, 2.5}) {
        const BarrierOracle oracle{h, w, k};
        const WaveSolution sol = regular_solution(Potential::square_barrier(h, w), k, grid);
        double err = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            err = std::max(err, std::abs(sol.real_value(i) - oracle.value(grid[i])));
        CHECK(err <= 1e-9);
    }
}

TEST_CASE("free Jost solution is e^{ikr}") {
    const RadialGrid grid = RadialGrid::uniform(10.0, 1001);
    const WaveSolution sol = jost_solution(Potential::zero(), 1.0, grid);
    double err = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        err = std::max(err, std::abs(sol.value()[i] - std::exp(cdouble(0.0, grid[i]))));
    CHECK(err <= 1e-10);

    const WaveSolution sol3 = jost_solution(Potential::zero(), 3.0, grid);
    for (std::size_t i = 0; i < grid.size(); i += 100)
        CHECK(std::abs(sol3.value()[i]) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("zero-energy pair: free case and Wronskian") {
    const RadialGrid grid = RadialGrid::uniform(15.0, 1501);
    auto [phi0, chi0] = zero_energy_pair(Potential::zero(), grid);
    for (std::size_t i = 0; i < grid.size(); i += 100) {
        CHECK(phi0.real_value(i) == doctest::Approx(grid[i]).epsilon(1e-10));
        CHECK(chi0.real_value(i) == doctest::Approx(1.0).epsilon(1e-8));
    }
    const auto asym = zero_energy_asymptotics(phi0);
    CHECK(asym.a0 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(asym.b0) <= 1e-8);
    // chi0(0) = 1 and chi0(inf) = 1/A0
    CHECK(chi0.real_value(0) == 1.0);
    CHECK(chi0.real_value(grid.size() - 1) == doctest::Approx(1.0 / asym.a0).epsilon(1e-8));
}

TEST_CASE("zero-energy pair Wronskian for exponential potential") {
    const RadialGrid grid = RadialGrid::uniform(25.0, 2001);
    auto [phi0, chi0] = zero_energy_pair(Potential::exponential(1.0, 1.0), grid);
    CHECK(wronskian_drift(phi0, chi0) <= 1e-8);
    // A0 > 1, B0 < 0 for nonzero positive V
    const auto asym = zero_energy_asymptotics(phi0);
    CHECK(asym.a0 > 1.0);
    CHECK(asym.b0 < 0.0);
}

TEST_CASE("zero-energy asymptotics for the square barrier closed form") {
    // phi0 = sinh(r) inside [0,1], then linear: A0 = cosh(1), B0 = sinh(1)-cosh(1)
    const RadialGrid grid = RadialGrid::uniform(12.0, 1201);
    auto [phi0, chi0] = zero_energy_pair(Potential::square_barrier(1.0, 1.0), grid);
    const auto asym = zero_energy_asymptotics(phi0);
    CHECK(asym.a0 == doctest::Approx(std::cosh(1.0)).epsilon(1e-9));
    CHECK(asym.b0 == doctest::Approx(std::sinh(1.0) - std::cosh(1.0)).epsilon(1e-8));
}

TEST_CASE("phi0 convexity and chi0 monotone convexity for V >= 0") {
    const RadialGrid grid = RadialGrid::uniform(20.0, 1001);
    auto [phi0, chi0] = zero_energy_pair(Potential::exponential(1.5, 0.8), grid);
    const double h = grid[1] - grid[0];
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        const double d2phi = phi0.real_value(i + 1) - 2.0 * phi0.real_value(i) + phi0.real_value(i - 1);
        CHECK(d2phi >= -1e-10);
        const double dchi = chi0.real_value(i + 1) - chi0.real_value(i);
        CHECK(dchi <= 1e-10);
        if (i >= 2) {
            const double d2chi = chi0.real_value(i + 1) - 2.0 * chi0.real_value(i) + chi0.real_value(i - 1);
            CHECK(d2chi >= -1e-10);
        }
    }
    (void)h;
}

TEST_CASE("asymptotic fit: free case gives A=1, delta=0") {
    const RadialGrid grid = RadialGrid::uniform(20.0, 2001);
    for (double k : {0.5, 1.0, 3.0}) {
        const WaveSolution sol = regular_solution(Potential::zero(), k, grid);
        const auto fit = asymptotic_fit(sol, k);
        CHECK(fit.amplitude == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(std::abs(fit.delta) <= 1e-10);
    }
}

TEST_CASE("asymptotic fit: delta < 0 for positive potential") {
    const RadialGrid grid = RadialGrid::uniform(25.0, 2001);
    const WaveSolution sol = regular_solution(Potential::exponential(1.0, 1.0), 1.0, grid);
    const auto fit = asymptotic_fit(sol, 1.0);
    CHECK(fit.delta < 0.0);
    CHECK(fit.amplitude > 0.0);
    CHECK(fit.residual <= 1e-6);
}

TEST_CASE("asymptotic fit rejects too few oscillations") {
    const RadialGrid grid = RadialGrid::uniform(5.0, 501);
    const WaveSolution sol = regular_solution(Potential::zero(), 0.5, grid);
    CHECK_THROWS(asymptotic_fit(sol, 0.5));
}

TEST_CASE("Wronskian conservation for two independent solutions at the same k") {
    const RadialGrid grid = RadialGrid::uniform(20.0, 2001);
    const Potential v = Potential::exponential(1.0, 1.0);
    const WaveSolution reg = regular_solution(v, 2.0, grid);
    const WaveSolution jost = jost_solution(v, 2.0, grid);
    const cdouble w0 = reg.value()[0] * jost.deriv()[0] - reg.deriv()[0] * jost.value()[0];
    CHECK(wronskian_drift(reg, jost) <= 1e-8 * std::abs(w0));
}

TEST_CASE("grid refinement gains at least 8x accuracy (4th order)") {
    const Potential v = Potential::exponential(1.0, 1.0);
    // Compare against a very fine reference at the shared endpoint r = 8.
    const RadialGrid fine = RadialGrid::uniform(8.0, 6401);
    SolverOptions precise;
    precise.target_phase_step = 5e-4;
    const WaveSolution ref = regular_solution(v, 1.0, fine, precise);
    const double ref_end = ref.real_value(fine.size() - 1);

    auto end_err = [&](std::size_t n, double phase) {
        SolverOptions o;
        o.target_phase_step = phase;
        const RadialGrid g = RadialGrid::uniform(8.0, n);
        const WaveSolution s = regular_solution(v, 1.0, g, o);
        return std::abs(s.real_value(g.size() - 1) - ref_end);
    };
    const double e1 = end_err(101, 0.2);
    const double e2 = end_err(201, 0.1);
    CHECK(e2 * 8.0 <= e1);
}
