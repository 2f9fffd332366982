#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "scatpos/phase_shift.hpp"

using namespace scatpos;

TEST_CASE("free fraction is sin^2(kr)/k^2 and vanishes at the origin") {
    const RadialGrid grid = RadialGrid::uniform(10.0, 501);
    const SampledFunction frac = phi_fraction(Potential::zero(), 1.0, grid);
    CHECK(frac[0] == 0.0);
    for (std::size_t i = 0; i < grid.size(); i += 50) {
        const double s = std::sin(grid[i]);
        CHECK(frac[i] == doctest::Approx(s * s).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("delta_via_integral: zero for V = 0, negative and fit-consistent for V > 0") {
    const RadialGrid grid = RadialGrid::uniform(15.0, 1501);
    CHECK(delta_via_integral(Potential::zero(), 1.0, grid) == doctest::Approx(0.0).scale(1.0));
    CHECK_THROWS(delta_via_integral(Potential::exponential(1.0, 1.0), 0.0, grid));

    const Potential v = Potential::exponential(1.0, 1.0);
    for (double k : {1.0, 3.0}) {
        const double d_int = delta_via_integral(v, k, grid);
        CHECK(d_int < 0.0);
        const double d_fit = asymptotic_fit(regular_solution(v, k, grid), k).delta;
        CHECK(d_int == doctest::Approx(d_fit).epsilon(0).scale(1.0).epsilon(1e-4));
    }
}

TEST_CASE("fraction table rows match single-k evaluations") {
    const RadialGrid grid = RadialGrid::uniform(8.0, 201);
    const KGrid kgrid = KGrid::uniform(0.5, 3.0, 6);
    const Potential v = Potential::exponential(1.0, 1.0);
    const FractionTable table = build_fraction_table(v, grid, kgrid);
    for (std::size_t ik = 0; ik < kgrid.size(); ++ik) {
        const SampledFunction frac = phi_fraction(v, kgrid[ik], grid);
        for (std::size_t ir = 0; ir < grid.size(); ir += 40)
            CHECK(table.at(ik, ir) == doctest::Approx(frac[ir]).epsilon(1e-14).scale(1.0));
    }
}

TEST_CASE("delta tables: both methods negative and continuous in k") {
    const RadialGrid grid = RadialGrid::uniform(15.0, 801);
    const KGrid kgrid = KGrid::uniform(0.5, 6.0, 23);
    const Potential v = Potential::exponential(1.0, 1.0);
    const PhaseShiftTable fit = delta_table_from_fit(v, kgrid, grid);
    const PhaseShiftTable integral =
        delta_table_from_fraction(build_fraction_table(v, grid, kgrid), v);
    for (std::size_t i = 0; i < kgrid.size(); ++i) {
        CHECK(fit.delta[i] < 0.0);
        CHECK(integral.delta[i] < 0.0);
        CHECK(std::abs(fit.delta[i] - integral.delta[i]) < 2e-4);
        if (i > 0) CHECK(std::abs(fit.delta[i] - fit.delta[i - 1]) < 0.5);
    }
}

TEST_CASE("free omega is the triangular profile") {
    const KGrid kgrid = KGrid::uniform(0.0, 30.0, 601);
    const RadialGrid tgrid = RadialGrid::uniform(3.0, 121);
    const SampledFunction w = omega(Potential::zero(), 1.0, tgrid, kgrid);
    for (std::size_t i = 0; i < tgrid.size(); ++i) {
        const double expect = std::max(0.0, 1.0 - 0.5 * tgrid[i]);
        CHECK(w[i] == doctest::Approx(expect).epsilon(0).scale(1.0).epsilon(1e-4));
    }
}

TEST_CASE("omega at r = 0 is identically zero") {
    const KGrid kgrid = KGrid::uniform(0.0, 10.0, 101);
    const RadialGrid tgrid = RadialGrid::uniform(2.0, 21);
    const SampledFunction w = omega(Potential::exponential(1.0, 1.0), 0.0, tgrid, kgrid);
    for (std::size_t i = 0; i < tgrid.size(); ++i) CHECK(w[i] == 0.0);
}

TEST_CASE("gamma profiles from the two routes agree and reconstruct delta") {
    const Potential v = Potential::exponential(1.0, 1.0);
    const RadialGrid rgrid = RadialGrid::uniform(12.0, 601);
    const KGrid kgrid = KGrid::uniform(0.0, 20.0, 401);
    const FractionTable table = build_fraction_table(v, rgrid, kgrid);
    const PhaseShiftTable delta = delta_table_from_fraction(table, v);

    std::vector<double> tgrid(60);
    for (std::size_t i = 0; i < tgrid.size(); ++i)
        tgrid[i] = 18.0 * double(i) / double(tgrid.size() - 1);
    const GammaProfile g_cos = gamma_profile_from_delta(delta, tgrid);
    const GammaProfile g_om = gamma_profile_from_omega(table, v, tgrid);

    double scale = 0.0;
    for (double x : g_cos.values) scale = std::max(scale, std::abs(x));
    CHECK(scale > 0.0);
    for (std::size_t i = 0; i < tgrid.size(); ++i) {
        CHECK(std::abs(g_cos.values[i] - g_om.values[i]) < 5e-3 * scale);
        CHECK(g_cos.values[i] > -1e-5 * scale);
        CHECK(g_om.values[i] > -1e-5 * scale);
    }

    // Reconstruction at k nodes aligned with the table (spacing 0.05).
    const KGrid krec = KGrid::uniform(1.0, 5.0, 5);
    const PhaseShiftTable rec = reconstruct_delta(g_cos, krec);
    for (std::size_t i = 0; i < krec.size(); ++i) {
        const std::size_t j = std::size_t(std::llround(krec[i] / 0.05));
        CHECK(std::abs(rec.delta[i] - delta.delta[j]) < 5e-3);
    }
}

TEST_CASE("regularity diagnostics: trivial for V = 0, finite and decaying for V > 0") {
    const RadialGrid grid = RadialGrid::uniform(12.0, 401);
    const KGrid kgrid = KGrid::uniform(0.0, 10.0, 101);

    const PhaseShiftTable zero =
        delta_table_from_fraction(build_fraction_table(Potential::zero(), grid, kgrid),
                                  Potential::zero());
    const DeltaRegularityReport rep0 = delta_regularity_diagnostics(zero);
    CHECK(rep0.delta0 == 0.0);
    CHECK(rep0.delta_kmax == 0.0);
    CHECK(rep0.l1_integrand == 0.0);

    const Potential v = Potential::exponential(1.0, 1.0);
    const PhaseShiftTable table =
        delta_table_from_fraction(build_fraction_table(v, grid, kgrid), v);
    const DeltaRegularityReport rep = delta_regularity_diagnostics(table);
    CHECK(rep.l1_integrand > 0.0);
    CHECK(rep.l1_integrand < 10.0);
    CHECK(rep.max_fd_derivative < 5.0);
    CHECK(rep.tail_decreasing);
}
