#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "scatpos/grid.hpp"
#include "scatpos/potential.hpp"

using namespace scatpos;

TEST_CASE("make_potential evaluates families") {
    CHECK(make_potential("zero", {})(3.7) == 0.0);
    const Potential ve = make_potential("exponential", {{"g", 1.0}, {"a", 1.0}});
    CHECK(ve(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    const Potential vb = make_potential("square_barrier", {{"height", 2.0}, {"width", 1.0}});
    CHECK(vb(0.5) == 2.0);
    CHECK(vb(1.5) == 0.0);
}

TEST_CASE("make_potential rejects bad parameters") {
    CHECK_THROWS(make_potential("exponential", {{"g", -1.0}, {"a", 1.0}}));
    CHECK_THROWS(make_potential("exponential", {{"g", 1.0}}));
    CHECK_THROWS(make_potential("square_barrier", {{"height", 0.0}, {"width", 1.0}}));
    CHECK_THROWS(make_potential("nope", {}));
    CHECK_THROWS(Potential::tabulated({0.0, 1.0}, {1.0, -0.5}));
}

TEST_CASE("check_integrability against closed forms") {
    const auto rep0 = check_integrability(Potential::zero(), 1e-8);
    CHECK(rep0.moment_r_full == 0.0);
    CHECK(rep0.moment_01 == 0.0);
    CHECK(rep0.pass);

    // int_0^inf r e^{-r} dr = 1
    const auto rep1 = check_integrability(Potential::exponential(1.0, 1.0), 1e-8);
    CHECK(rep1.moment_r_full == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(rep1.pass);

    // int_0^inf r g e^{-r/a} dr = g a^2 = 0.5
    const auto rep2 = check_integrability(Potential::exponential(2.0, 0.5), 1e-8);
    CHECK(rep2.moment_r_full == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("choose_truncation") {
    CHECK(choose_truncation(Potential::zero(), 1e-8) == 1.0);
    // Solve (R + 1) e^{-R} = 1e-8: R ~ 21.4
    const double r = choose_truncation(Potential::exponential(1.0, 1.0), 1e-8);
    CHECK((r + 1.0) * std::exp(-r) == doctest::Approx(1e-8).epsilon(1e-6));
    CHECK(r == doctest::Approx(21.4).epsilon(0.01));
    CHECK(choose_truncation(Potential::square_barrier(1.0, 1.0), 1e-8) == 1.0);
}

TEST_CASE("choose_truncation is monotone in eps") {
    const Potential v = Potential::gaussian(2.0, 1.5);
    double prev = 0.0;
    for (double eps : {1e-2, 1e-4, 1e-6, 1e-8, 1e-10}) {
        const double r = choose_truncation(v, eps);
        CHECK(r >= prev);
        prev = r;
    }
}

TEST_CASE("evaluator is non-negative at random points") {
    std::mt19937_64 rng(12345);
    const Potential vs[] = {
        Potential::zero(), Potential::exponential(2.0, 0.7),
        Potential::square_barrier(1.5, 2.0), Potential::gaussian(1.0, 2.0),
        Potential::tabulated({0.0, 0.5, 1.0, 2.0}, {1.0, 0.2, 0.4, 0.0})};
    for (const auto& v : vs) {
        std::uniform_real_distribution<double> dist(0.0, 20.0);
        for (int i = 0; i < 10000; ++i) CHECK(v(dist(rng)) >= 0.0);
    }
}

TEST_CASE("tabulated tail integrals match trapezoid of the table") {
    const Potential v = Potential::tabulated({0.0, 1.0, 2.0, 4.0}, {2.0, 1.0, 0.5, 0.0});
    // int_0^inf V = 0.5*(2+1)*1 + 0.5*(1+0.5)*1 + 0.5*(0.5+0)*2 = 2.75
    CHECK(v.tail_integral(0.0) == doctest::Approx(2.75).epsilon(1e-12));
    CHECK(v.tail_integral(5.0) == 0.0);
    CHECK(v.tail_first_moment(4.0) == 0.0);
}

TEST_CASE("radial grids") {
    const RadialGrid g = RadialGrid::uniform(10.0, 101);
    CHECK(g[0] == 0.0);
    CHECK(g.r_max() == 10.0);
    CHECK(g.is_uniform());
    const RadialGrid gg = RadialGrid::graded(10.0, 101, 1.05);
    CHECK(gg[1] < g[1]); // clustered near the origin
    CHECK(!gg.is_uniform());
    CHECK(gg.r_max() == 10.0);
    CHECK_THROWS(RadialGrid({0.0, 1.0, 0.5}));
    CHECK_THROWS(RadialGrid({0.1, 1.0, 2.0}));
}
