import math

import pytest

import scatpos as sp


def test_free_regular_solution_matches_sine():
    grid = sp.RadialGrid.uniform(10.0, 401)
    sol = sp.regular_solution(sp.Potential.zero(), 2.0, grid)
    for r, u in zip(grid.nodes, sol.values):
        assert abs(u.real - math.sin(2.0 * r) / 2.0) < 1e-9
        assert u.imag == 0.0


def test_phase_shift_negative_for_positive_potential():
    v = sp.Potential.exponential(1.0, 1.0)
    grid = sp.RadialGrid.uniform(15.0, 801)
    delta = sp.delta_via_integral(v, 1.0, grid)
    assert delta < 0.0
    _, delta_fit, _ = sp.asymptotic_fit(sp.regular_solution(v, 1.0, grid), 1.0)
    assert abs(delta - delta_fit) < 1e-3


def test_kernel_diagonal_equals_born_term():
    grid = sp.RadialGrid.uniform(15.0, 151)
    kernel = sp.solve_kernel(sp.Potential.exponential(1.0, 1.0), grid, 1e-12, 60)
    assert kernel.converged
    assert kernel.at(0, 0) == pytest.approx(0.5, rel=1e-10)


def test_measure_transform_and_positivity():
    grid = sp.RadialGrid.uniform(30.0, 601)
    density = sp.SampledFunction(grid, [0.5 * math.exp(-r) for r in grid.nodes])
    alpha = sp.StieltjesMeasure.density_only(density)
    kgrid = sp.KGrid.uniform(0.0, 4.0, 9)
    out = sp.bochner_transform(alpha, kgrid)
    for x, val in zip(out.k, out.values):
        expect = 0.5 / complex(1.0, -x)
        assert abs(val - expect) < 1e-5

    opts = sp.PositiveTypeOptions()
    opts.seed = 5
    report = sp.positive_type_check(
        lambda x: complex(math.cos(x), math.sin(x)), 4, 5, 1e-8, opts
    )
    assert report.pass_


def test_make_potential_from_config_params():
    v = sp.make_potential("gaussian", {"g": 2.0, "a": 1.5})
    assert v(0.0) == pytest.approx(2.0)
