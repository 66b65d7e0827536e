"""Acceptance criteria A1-A12 at their stated tolerances.

A one-line pass/fail summary per criterion is printed at the end of the run
(see conftest.py).
"""
import time

import pytest

from qwhittaker.exactnum import exact
from qwhittaker.koornwinder import MKTable, verify_pieri, verify_qde
from qwhittaker.params import preset
from qwhittaker.quadrature import verify_orthogonality
from qwhittaker.scattering import verify_scattering
from qwhittaker.suites import suite_dn, suite_limits, suite_oracle
from qwhittaker.toda import (detailed_balance_plus, verify_commutativity, verify_rational_identity,
                             verify_selfadjoint, verify_toda_eigen)
from qwhittaker.weyl import partitions
from qwhittaker.whittaker import WhittakerTable, verify_dual_commutativity, verify_dual_eigen


def _all_pass(reports):
    bad = [r for r in reports if not r.passed]
    assert not bad, [(r.name, r.residual, r.notes[:3]) for r in bad]


@pytest.mark.acceptance("A1")
def test_a1_toda_eigen_identity():
    start = time.perf_counter()
    reps = []
    for name, size in (("P1", 4), ("P2", 3)):
        params = preset(name, t=0)
        reps.append(verify_toda_eigen(size, params, WhittakerTable(params), "H"))
    _all_pass(reps)
    assert all(r.residual == "0" for r in reps)
    assert time.perf_counter() - start < 120


@pytest.mark.acceptance("A2")
def test_a2_hq_eigen_identity():
    rep = verify_toda_eigen(3, preset("P1", t=0), operator="HQ")
    _all_pass([rep])
    assert rep.residual == "0"


@pytest.mark.acceptance("A3")
@pytest.mark.parametrize("name", ["P1", "P2"])
def test_a3_dual_eigen_and_commutativity(name):
    params = preset(name, t=0)
    _all_pass([verify_dual_eigen(4, params), verify_dual_commutativity(3, params)])


@pytest.mark.acceptance("A4")
def test_a4_generic_t_qde_and_pieri():
    params = preset("P1")
    assert params.t == exact("1/3")
    table = MKTable(params)
    for lam in partitions(params.n, 3):
        assert not verify_qde(lam, params, table), lam
        assert not verify_pieri(lam, params, table), lam


@pytest.mark.acceptance("A5")
def test_a5_orthogonality_by_quadrature():
    start = time.perf_counter()
    reps = verify_orthogonality(preset("P1", t=0), 3, 256, diag_tol=1e-6, offdiag_tol=1e-8)
    reps += verify_orthogonality(preset("P2", t=0), 3, 96, diag_tol=1e-4, offdiag_tol=1e-8)
    _all_pass(reps)
    assert {r.name for r in reps} == {"ortho-offdiag", "ortho-diag", "ortho-mass"}
    assert time.perf_counter() - start < 300


@pytest.mark.acceptance("A6")
@pytest.mark.parametrize("name", ["P1", "P2"])
def test_a6_detailed_balance(name):
    params = preset(name, t=0)
    _all_pass([detailed_balance_plus(6, params), verify_selfadjoint(6, params, "H"),
               verify_selfadjoint(6, params, "HQ")])


@pytest.mark.acceptance("A7")
@pytest.mark.parametrize("name", ["P1", "P2", "R"])
def test_a7_rank_one_oracles(name):
    reps = suite_oracle(preset(name), max_weight=5)
    _all_pass(reps)
    names = {r.name for r in reps}
    assert "oracle-q-hahn" in names
    if name != "R":
        assert {"oracle-mk", "oracle-whittaker"} <= names


@pytest.mark.acceptance("A8")
def test_a8_limit_continuity():
    reps = suite_limits(preset("P1"))
    _all_pass(reps)
    assert [r.name for r in reps] == ["limit-t", "limit-that0"]


@pytest.mark.acceptance("A9")
@pytest.mark.parametrize("name", ["P1", "P2"])
def test_a9_scattering(name):
    reps = verify_scattering(preset(name), trials=100, tol=1e-12)
    _all_pass(reps)
    chi = [r for r in reps if r.name == "chi-orthonormal"][0]
    assert chi.tolerance == 1e-6


@pytest.mark.acceptance("A10")
@pytest.mark.parametrize("name", ["P1", "P2"])
def test_a10_rational_identity(name):
    params = preset(name)
    assert params.mode == "generic-t"
    rep = verify_rational_identity(params, trials=100)
    _all_pass([rep])
    assert "checked 100 identities" in rep.notes


@pytest.mark.acceptance("A11")
def test_a11_commutativity():
    _all_pass([verify_commutativity(6, 3, preset("P1", t=0))])


@pytest.mark.acceptance("A12")
@pytest.mark.parametrize("name", ["DE", "D"])
def test_a12_dn_potential_vanishes(name):
    _all_pass(suite_dn(preset(name, t=0), max_weight=4))
