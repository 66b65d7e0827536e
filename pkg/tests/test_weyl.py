import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qwhittaker.exactnum import exact
from qwhittaker.weyl import (InvariantPoly, LaurentPoly, NonInvariantError, RankMismatchError, as_partition,
                             dominance_leq, dominant, dominated, evaluate, expand, height, multiply, orbit,
                             orbit_size, partitions, partitions_of, signed_permutations, symmetrize)


def small_partition(n, top=3):
    return st.lists(st.integers(0, top), min_size=n, max_size=n).map(lambda v: tuple(sorted(v, reverse=True)))


def small_poly(n):
    return st.dictionaries(small_partition(n, 2), st.integers(-4, 4), max_size=3).map(
        lambda d: InvariantPoly(n, {k: exact(v) for k, v in d.items()}))


def test_dominance_examples():
    assert dominance_leq((1, 1), (2, 0))
    assert not dominance_leq((2, 0), (1, 1))
    assert dominance_leq((1, 0), (1, 0))
    with pytest.raises(RankMismatchError):
        dominance_leq((1,), (1, 0))


def test_as_partition():
    assert as_partition([2], 3) == (2, 0, 0)
    with pytest.raises(ValueError):
        as_partition([1, 2])
    with pytest.raises(ValueError):
        as_partition([1, -1])


def test_partition_counts():
    assert len(partitions_of(4, 2)) == 3
    assert len(partitions_of(4, 4)) == 5
    assert partitions(2, 1) == [(0, 0), (1, 0)]


@given(small_partition(3), small_partition(3))
def test_height_strictly_monotone(mu, lam):
    if mu != lam and dominance_leq(mu, lam):
        assert height(mu) < height(lam)


def test_linear_extension_refines_dominance():
    order = partitions(3, 5)
    pos = {lam: i for i, lam in enumerate(order)}
    for mu in order:
        for lam in order:
            if mu != lam and dominance_leq(mu, lam):
                assert pos[mu] < pos[lam]


def test_orbits():
    assert len(orbit((2, 1))) == 8 == orbit_size((2, 1))
    assert set(orbit((1, 0))) == {(1, 0), (-1, 0), (0, 1), (0, -1)}
    assert set(orbit((1, 1))) == {(1, 1), (1, -1), (-1, 1), (-1, -1)}
    assert len(signed_permutations(3)) == 48
    assert dominant((-3, 0, 2)) == (3, 2, 0)
    for lam in partitions(3, 4):
        assert len(orbit(lam)) == orbit_size(lam)


def test_expand_and_symmetrize():
    assert expand(InvariantPoly.constant(2)).coeffs == {(0, 0): 1}
    f = LaurentPoly(1, {(1,): 1, (-1,): 1})
    assert symmetrize(f) == InvariantPoly.monomial((1,))
    g = LaurentPoly(2, {beta: 1 for beta in orbit((2, 1))})
    assert symmetrize(g) == InvariantPoly.monomial((2, 1))
    with pytest.raises(NonInvariantError):
        symmetrize(LaurentPoly(1, {(1,): 1}))


def test_evaluate_examples():
    assert evaluate(InvariantPoly.monomial((1,)), [0.0]) == 2
    assert abs(evaluate(InvariantPoly.monomial((1, 0)), [math.pi / 2, 0.0]) - 2) < 1e-15
    for n in (1, 2, 3):
        assert abs(evaluate(InvariantPoly.monomial((1,) + (0,) * (n - 1)), [0.0] * n) - 2 * n) < 1e-15


@settings(max_examples=30, deadline=None)
@given(small_poly(2), small_poly(2))
def test_multiply_matches_laurent_product(a, b):
    assert expand(multiply(a, b)) == expand(a) * expand(b)
    assert multiply(a, b) == multiply(b, a)


@settings(max_examples=30, deadline=None)
@given(small_poly(2), st.floats(-3, 3), st.floats(-3, 3))
def test_evaluate_is_real_and_matches_cosines(p, x, y):
    val = evaluate(p, [x, y])
    assert abs(val.imag) < 1e-9
    direct = 0.0
    for lam, c in p.coeffs.items():
        for beta in orbit(lam):
            direct += float(c) * math.cos(beta[0] * x + beta[1] * y)
    assert np.isclose(val.real, direct, atol=1e-9)


def test_dominated_down_set():
    assert dominated((2, 0)) == [(0, 0), (1, 0), (1, 1), (2, 0)]
    # sizes need not agree: (1, 0) <= (1, 1) by partial sums
    assert dominated((1, 1)) == [(0, 0), (1, 0), (1, 1)]


def test_invariant_poly_json_round_trip():
    p = InvariantPoly(2, {(1, 0): exact("-3/7"), (2, 2): exact(5)})
    assert InvariantPoly.from_json(2, p.to_json()) == p
    assert p[(1, 0)] == exact("-3/7") and p[(0, 0)] == 0
