import math

import numpy as np
import pytest

from qwhittaker.exactnum import exact
from qwhittaker.params import preset
from qwhittaker.quadrature import (alcove_integral, evaluate_points, expected_pieri_level1, grid_offset,
                                   inner_product, pieri_coefficients_numeric, torus_grid, verify_orthogonality,
                                   verify_pieri_numeric, weight_eval, weyl_order)
from qwhittaker.weyl import InvariantPoly, evaluate
from qwhittaker.whittaker import compute_whittaker, norm0

P1 = preset("P1", t=0)


def test_grid_validation_and_order():
    with pytest.raises(ValueError):
        torus_grid(2, 7)
    assert weyl_order(3) == 48
    assert grid_offset(preset("DE")) == 0.5 and grid_offset(P1) == 0.0


def test_grid_evaluation_matches_pointwise():
    p = InvariantPoly(2, {(2, 1): exact("1/3"), (1, 1): exact(-2), (0, 0): exact(1)})
    grid = torus_grid(2, 16)
    vals = grid.evaluate(p)
    for k in (0, 37, 200):
        assert abs(vals[k] - evaluate(p, grid.points[k]).real) < 1e-13
    assert np.allclose(evaluate_points(p, grid.points), vals)


def test_weight_vanishes_on_walls():
    for xi in ([0.0, 0.4], [0.5, 0.5], [math.pi, 1.0], [0.3, -0.3]):
        assert abs(weight_eval(np.array(xi), P1)) < 1e-14


def test_mk_weight_tends_to_whittaker_weight_linearly():
    p = preset("P1")
    xi = np.array([[0.7, 0.3], [2.0, 1.1]])
    base = weight_eval(xi, P1, "whittaker")
    gaps = [np.max(np.abs(weight_eval(xi, p.at_t(exact(1) / 10**k), "MK") / base - 1)) for k in (6, 7, 8)]
    assert gaps[2] < 1e-7
    for a, b in zip(gaps, gaps[1:]):
        assert 8 < a / b < 12


def test_mass_and_orthogonality_small():
    grid = torus_grid(2, 128)
    one = InvariantPoly.constant(2)
    assert abs(inner_product(one, one, grid, P1) * norm0(P1) - 1) < 1e-6
    p10 = compute_whittaker((1, 0), P1)
    norm = math.sqrt(inner_product(p10, p10, grid, P1) * inner_product(one, one, grid, P1))
    assert abs(inner_product(p10, one, grid, P1)) < 1e-8 * norm


def test_compensated_sum_agrees():
    grid = torus_grid(2, 64)
    vals = grid.evaluate(compute_whittaker((2, 1), P1)) ** 2
    a = alcove_integral(vals, grid, P1)
    b = alcove_integral(vals, grid, P1, compensated=True)
    assert abs(a - b) < 1e-14 * abs(a)


@pytest.mark.parametrize("name,t", [("P1", None), ("P1", 0), ("R", None), ("DE", None), ("P2", 0)])
def test_orthogonality_reports(name, t):
    p = preset(name, t=t)
    reps = verify_orthogonality(p, 2, 64 if p.n == 3 else 128)
    assert all(r.passed for r in reps), [(r.name, r.residual) for r in reps]


def test_numeric_pieri_matches_closed_forms():
    assert verify_pieri_numeric(preset("P1"), 2, 128).passed
    assert verify_pieri_numeric(P1, 2, 128).passed


def test_numeric_pieri_near_t_zero_approaches_stencil():
    pt = preset("P1").at_t(exact(1) / 10**4)
    for lam in ((0, 0), (1, 0), (2, 1)):
        num = pieri_coefficients_numeric(lam, 1, pt, 128)
        exp = expected_pieri_level1(lam, P1)
        assert max(abs(num.get(m, 0) - exp.get(m, 0)) for m in set(num) | set(exp)) < 1e-3
