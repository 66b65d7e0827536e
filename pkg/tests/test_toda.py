import pytest

from qwhittaker.exactnum import exact
from qwhittaker.params import ParamSet, ParameterError, preset
from qwhittaker.toda import (PoleError, apply_H, apply_HQ, detailed_balance_plus, h_stencil, hq_stencil,
                             pieri_deficit, potential_u, reduced_stencil, toda_stencil, verify_commutativity,
                             verify_rational_identity, verify_reduced_eigen, verify_selfadjoint, verify_toda_eigen,
                             w_minus, w_plus)
from qwhittaker.weyl import partitions

P1 = preset("P1", t=0)


def test_stencil_examples():
    assert h_stencil((0, 0), P1)[(1, 0)] == 1
    out = apply_H({(0, 0): exact(1)}, P1)
    assert out[(1, 0)] == h_stencil((1, 0), P1)[(0, 0)]
    assert potential_u((0, 0), P1) == 2


def test_boundary_moves_vanish():
    for lam in partitions(2, 5):
        st = toda_stencil(lam, P1)
        assert all(min(mu) >= 0 and mu[0] >= mu[1] for mu, _ in st.moves())


def test_rank_one_chain():
    p = preset("P1", t=0, n=1)
    assert verify_toda_eigen(4, p).passed
    assert verify_selfadjoint(6, p).passed
    assert verify_commutativity(5, 2, p).passed
    assert verify_rational_identity(preset("P1", n=1), trials=20).passed


def test_hq_is_real_combination():
    f = {(1, 0): exact(1), (2, 1): exact("-1/2")}
    g = apply_HQ(f, P1)
    assert g and all(isinstance(v, type(exact(1))) for v in g.values())
    assert hq_stencil((0, 0), P1)


def test_pieri_deficit_limit_is_u():
    p = preset("P1")
    for lam in partitions(2, 3):
        u = float(potential_u(lam, P1))
        d = float(pieri_deficit(lam, p.at_t(exact(1) / 10**6)))
        assert abs(d - u) < 1e-5


def test_extended_boundary_weights():
    de = preset("DE")
    assert w_plus(0, de) == 2
    assert all(w_plus(m, de) == 1 and w_minus(m, de) == 1 for m in range(1, 6))
    assert w_minus(0, de) == 0


def test_dn_needs_both_pairs():
    # that_2 = -that_3 = sqrt(q) alone does not kill the potential; that_0 = -that_1 is needed too
    p = ParamSet(2, exact("1/4"), 0, tuple(exact(x) for x in ("1/2", "-1/8", "1/2", "-1/2")), "t-zero")
    assert p.that[2] == p.sqrt_q == -p.that[3]
    assert potential_u((0, 0), p) == exact("3/8")


def test_genuine_pole_raises():
    p = ParamSet(2, exact("1/4"), 0, (1, 1, 1, 1), "extended-boundary")
    with pytest.raises(PoleError):
        w_plus(0, p)


def test_reduced_chain():
    r = preset("R")
    assert verify_reduced_eigen(4, r).passed
    assert detailed_balance_plus(5, r).passed
    flat = ParamSet(2, exact("1/4"), 0, (0, 0, 0, 0), "that0-zero")
    for lam in partitions(2, 4):
        assert reduced_stencil(lam, flat).u == 0
    assert verify_reduced_eigen(4, flat).passed


def test_stencil_mode_guard():
    with pytest.raises(ParameterError):
        toda_stencil((0, 0), preset("P1"))
    with pytest.raises(ParameterError):
        verify_rational_identity(P1)
