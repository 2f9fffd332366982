#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "scatpos/bochner.hpp"
#include "scatpos/marchenko.hpp"

using namespace scatpos;

TEST_CASE("bochner transform of a single atom is a pure phase") {
    const RadialGrid grid = RadialGrid::uniform(10.0, 101);
    const StieltjesMeasure m = StieltjesMeasure::atoms_only({{2.0, 1.0}}, grid);
    const KGrid xgrid = KGrid::uniform(0.0, 5.0, 11);
    const TransformResult out = bochner_transform(m, xgrid);
    for (std::size_t i = 0; i < xgrid.size(); ++i) {
        CHECK(std::abs(std::abs(out.values[i]) - 1.0) < 1e-12);
        CHECK(std::abs(out.values[i] - std::exp(cdouble(0.0, 2.0 * xgrid[i]))) < 1e-12);
    }
}

TEST_CASE("bochner transform of density e^{-t} is 1/(1-ix)") {
    const RadialGrid grid = RadialGrid::uniform(40.0, 2001);
    const SampledFunction density =
        SampledFunction::from_function(grid, [](double t) { return std::exp(-t); });
    const KGrid xgrid = KGrid::uniform(0.0, 8.0, 17);
    const TransformResult out = bochner_transform(StieltjesMeasure::density_only(density), xgrid);
    for (std::size_t i = 0; i < xgrid.size(); ++i) {
        const cdouble expect = 1.0 / cdouble(1.0, -xgrid[i]);
        CHECK(std::abs(out.values[i] - expect) < 1e-6);
    }
}

TEST_CASE("pure phases and their conical combinations are of positive type") {
    const auto phase = [](double a) {
        return [a](double x) { return std::exp(cdouble(0.0, a * x)); };
    };
    PositiveTypeOptions opts;
    opts.seed = 7;
    CHECK(positive_type_check(phase(1.3), 6, 20, 1e-10, opts).pass);

    const ComplexSampler combo = [&](double x) {
        return 0.5 * phase(1.3)(x) + 2.0 * phase(-0.4)(x) + 0.1 * phase(5.0)(x);
    };
    CHECK(positive_type_check(combo, 6, 20, 1e-10, opts).pass);

    // cos x = half-weight atoms at +-1.
    const ComplexSampler cosx = [](double x) { return cdouble(std::cos(x), 0.0); };
    CHECK(positive_type_check(cosx, 6, 20, 1e-10, opts).pass);
}

TEST_CASE("an indicator bump is not of positive type") {
    const ComplexSampler box = [](double x) {
        return cdouble(std::abs(x) < 0.5 ? 1.0 : 0.0, 0.0);
    };
    PositiveTypeOptions opts;
    opts.seed = 11;
    const PositiveTypeReport rep = positive_type_check(box, 8, 50, 1e-10, opts);
    CHECK_FALSE(rep.pass);
    CHECK(rep.min_eigenvalue < 0.0);
}

TEST_CASE("hermitian symmetry is enforced") {
    const ComplexSampler odd = [](double x) { return cdouble(x, 0.0); };
    CHECK_THROWS_AS(positive_type_check(odd, 4, 2, 1e-8), std::invalid_argument);
}

TEST_CASE("reports are deterministic for a fixed seed") {
    const ComplexSampler f = [](double x) { return std::exp(cdouble(0.0, 0.7 * x)); };
    PositiveTypeOptions opts;
    opts.seed = 42;
    const PositiveTypeReport a = positive_type_check(f, 5, 10, 1e-10, opts);
    const PositiveTypeReport b = positive_type_check(f, 5, 10, 1e-10, opts);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].min_eigenvalue == b.records[i].min_eigenvalue);
        CHECK(a.records[i].points == b.records[i].points);
    }
}

TEST_CASE("every trial keeps the forced near-degenerate pair") {
    const ComplexSampler f = [](double x) { return std::exp(cdouble(0.0, x)); };
    PositiveTypeOptions opts;
    opts.seed = 3;
    opts.close_pair = 0.02;
    const PositiveTypeReport rep = positive_type_check(f, 5, 10, 1e-10, opts);
    for (const auto& trial : rep.records) {
        const double gap = std::abs(trial.points.back() - trial.points.front());
        CHECK(gap <= opts.close_pair + 1e-12);
    }
}

TEST_CASE("measure transform + pushforward agree and stay positive semidefinite") {
    // r_max must be generous here: the pushforward acquires a tail of size
    // ~e^{-r_max/2} beyond the kernel triangle, which the chain comparison misses.
    const Potential v = Potential::exponential(1.0, 1.0);
    const RadialGrid grid = RadialGrid::uniform(30.0, 801);
    const TriangularKernel kernel = solve_kernel(v, grid, 1e-12, 60);
    const SampledFunction density =
        SampledFunction::from_function(grid, [](double t) { return 0.3 * std::exp(-t); });
    const StieltjesMeasure alpha = StieltjesMeasure::density_only(density);

    PositiveTypeOptions opts;
    opts.seed = 99;
    opts.x_max = 5.0;
    const KGrid kgrid = KGrid::uniform(0.0, 4.0, 17);
    const PushforwardCheckReport rep = pushforward_check(alpha, v, 4, 5, kernel, kgrid, 1e-8, opts);
    CHECK(rep.psd.pass);
    CHECK(rep.chain_pass);
    CHECK(rep.chain_residual < 1e-5);
}
