import numpy as np
import pytest

from qwhittaker.exactnum import exact, qpoch_infinite
from qwhittaker.params import ParameterError, preset
from qwhittaker.quadrature import alcove_integral, torus_grid
from qwhittaker.weyl import InvariantPoly, partitions
from qwhittaker.whittaker import (WhittakerTable, apply_dual_H, apply_dual_Hl, combined_weights, compute_whittaker,
                                  dual_eigenvalue, forward_transform, inverse_transform, lattice_norm, norm0,
                                  reduced_lattice_norm, wave_prefactor)

P1 = preset("P1", t=0)


def test_dual_H_kills_constants():
    for l in (1, 2):
        assert not apply_dual_Hl(InvariantPoly.constant(2), l, P1)


def test_dual_H_eigenvalue_on_p_lambda():
    for lam in partitions(2, 3):
        p = compute_whittaker(lam, P1)
        assert apply_dual_H(p, P1) == p.scale(P1.q ** -lam[0] - 1)


def test_level_one_is_dual_H():
    for lam in partitions(2, 4):
        m = InvariantPoly.monomial(lam)
        assert apply_dual_Hl(m, 1, P1) == apply_dual_H(m, P1)


def test_dual_eigenvalue_examples():
    assert all(dual_eigenvalue((0, 0), l, P1) == 0 for l in (1, 2))
    assert dual_eigenvalue((1, 0), 1, P1) == 3
    assert P1.t0 == exact("1/2")
    assert dual_eigenvalue((1, 1), 2, P1) == exact("45/4")


def test_rank_one_eigenvalue_carries_the_t0_term():
    # for n = 1 the level l = 1 is also the top level l = n
    p = preset("P1", t=0, n=1)
    q = p.q
    poly = compute_whittaker((2,), p)
    image = apply_dual_H(poly, p)
    assert image != poly.scale(q**-2 - 1)
    assert image == poly.scale(q**-2 - 1 + p.t0_sq * (q**2 - 1))
    assert dual_eigenvalue((2,), 1, p) == 15 + exact("1/4") * (exact("1/16") - 1)


def test_combined_weights_default_primes():
    w, redraws = combined_weights((2, 1), P1)
    assert w == (2, 3) and redraws == 0


def test_small_cases():
    assert compute_whittaker((0, 0), P1) == InvariantPoly.constant(2)
    assert lattice_norm((0, 0), P1) == 1
    assert wave_prefactor((3, 0), P1) == 1


def test_requires_t_zero():
    with pytest.raises(ParameterError):
        WhittakerTable(preset("P1"))


def test_reduced_norm_forms_agree():
    r = preset("R")
    for lam in partitions(2, 5):
        assert lattice_norm(lam, r) == reduced_lattice_norm(lam, r)
        assert wave_prefactor(lam, r) == 1


def test_extended_boundary_removable_zero():
    de = preset("DE")
    assert de.t0_sq == 1
    for lam in partitions(2, 4):
        assert lattice_norm(lam, de) != 0
        wave_prefactor(lam, de)


def test_norm0_corrects_the_literal_constant():
    # literal (q)_inf prod_{r<s} (that_r that_s)_inf misses (q)_inf^(n-1) for n >= 2
    q = float(P1.q)
    th = [float(x) for x in P1.that]
    literal = qpoch_infinite(q, q).real
    for r in range(4):
        for s in range(r + 1, 4):
            literal *= qpoch_infinite(th[r] * th[s], q).real
    grid = torus_grid(2, 128)
    mass = alcove_integral(np.ones(len(grid.points)), grid, P1)
    assert abs(mass * norm0(P1) - 1) < 1e-12
    assert abs(mass * literal - 1) > 1e-2
    assert abs(norm0(P1) / literal - qpoch_infinite(q, q).real) < 1e-14


def test_forward_transform_of_indicator():
    table = WhittakerTable(P1)
    xi = np.array([0.9, 0.4])
    assert abs(forward_transform({(0, 0): 1}, xi, P1, table) - norm0(P1)) < 1e-15


@pytest.mark.parametrize("name", ["P1", "R", "DE"])
def test_round_trip(name):
    p = preset(name, t=0)
    table = WhittakerTable(p)
    for lam in ((0, 0), (2, 1)):
        def fhat(pts, lam=lam):
            return forward_transform({lam: 1}, pts, p, table)
        assert abs(inverse_transform(fhat, lam, p, 64, table) - 1) < 1e-5
        assert abs(inverse_transform(fhat, (1, 0), p, 64, table)) < 1e-5


def test_table_json_is_deterministic():
    a = WhittakerTable(P1).build(2).dumps()
    b = WhittakerTable(P1).build(2).dumps()
    assert a == b and '"weights"' in a
