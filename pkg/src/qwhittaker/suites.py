"""Verification suites: each returns a list of VerificationReports.

Suites take the parameter set as given and project it where a layer needs
it: the Toda and dual-operator checks run at t = 0, the reduced checks at
that_0 = 0, the Pieri/qde identities at the given generic t.
"""
from __future__ import annotations

from .askey_wilson import askey_wilson_oracle, continuous_dual_q_hahn_oracle
from .exactnum import ZERO, exact
from .params import ParamSet, ParameterError
from .report import exact_report, numeric_report, timed
from .weyl import partitions

SUITES = ("eigen", "dual", "pieri", "ortho", "selfadjoint", "commute", "identity", "scatter",
          "reduced", "oracle", "limits", "dn")


def t_zero(params: ParamSet) -> ParamSet:
    return params if params.t == 0 else params.at_t_zero()


def reduced_params(params: ParamSet) -> ParamSet:
    """The that_0 -> 0 degeneration of ``params`` (t = 0)."""
    if params.mode == "that0-zero":
        return params
    p = params if params.t == 0 else params.at_t_zero()
    return p.with_that((ZERO,) + p.that[1:], mode="that0-zero")


def _default_size(params, small, large):
    return small if params.n <= 2 else large


# suites ---------------------------------------------------------------------------

def suite_eigen(params, max_weight=None, **_):
    from .toda import verify_reduced_eigen, verify_toda_eigen
    from .whittaker import WhittakerTable

    z = t_zero(params)
    mw = max_weight if max_weight is not None else _default_size(z, 4, 3)
    table = WhittakerTable(z)
    if z.mode == "that0-zero":
        return [verify_reduced_eigen(mw, z, table)]
    return [verify_toda_eigen(mw, z, table, "H"), verify_toda_eigen(min(mw, 3), z, table, "HQ")]


def suite_dual(params, max_weight=None, **_):
    from .whittaker import verify_dual_commutativity, verify_dual_eigen

    z = t_zero(params)
    mw = max_weight if max_weight is not None else 4
    return [verify_dual_eigen(mw, z), verify_dual_commutativity(min(mw, 3), z)]


def suite_pieri(params, max_weight=None, grid=None, tol=None, **_):
    from .koornwinder import MKTable, verify_pieri, verify_qde
    from .quadrature import verify_pieri_numeric

    mw = max_weight if max_weight is not None else 3
    out = []
    if params.mode == "generic-t":
        table = MKTable(params)
        for name, fn in (("qde", verify_qde), ("pieri", verify_pieri)):
            failures, count = [], 0
            for lam in partitions(params.n, mw):
                res = fn(lam, table=table, params=params)
                count += 1
                if res:
                    failures.append((lam, res))
            out.append(exact_report(name, failures, params, checked=count))
    out.append(verify_pieri_numeric(params, min(mw, 2), grid, tol if tol is not None else 1e-6))
    return out


def suite_ortho(params, grid=None, tol=None, max_weight=None, **_):
    from .quadrature import verify_orthogonality

    mw = max_weight if max_weight is not None else 3
    runs = [t_zero(params)]
    if params.mode == "generic-t":
        runs.append(params)
    out = []
    for p in runs:
        reps = verify_orthogonality(p, mw, grid, diag_tol=tol)
        if p.mode == "generic-t":
            for rep in reps:
                rep.name = rep.name.replace("ortho-", "ortho-mk-")
        out += reps
    return out


def suite_selfadjoint(params, max_weight=None, **_):
    from .toda import detailed_balance_plus, verify_selfadjoint

    z = t_zero(params)
    mw = max_weight if max_weight is not None else 6
    out = [detailed_balance_plus(mw, z), verify_selfadjoint(mw, z, "H")]
    if z.mode != "that0-zero":
        out.append(verify_selfadjoint(mw, z, "HQ"))
    return out


def suite_commute(params, max_weight=None, **_):
    from .toda import verify_commutativity

    z = t_zero(params)
    box = max_weight if max_weight is not None else 6
    return [verify_commutativity(box, box - z.n - 1, z)]


def suite_identity(params, trials=None, **_):
    from .toda import verify_rational_identity

    return [verify_rational_identity(params, trials or 100)]


def suite_scatter(params, trials=None, tol=None, **_):
    from .scattering import verify_scattering

    return verify_scattering(params, trials or 100, tol=tol if tol is not None else 1e-12)


def suite_reduced(params, max_weight=None, grid=None, tol=None, **_):
    from .quadrature import verify_orthogonality
    from .toda import detailed_balance_plus, verify_reduced_eigen, verify_selfadjoint

    r = reduced_params(params)
    mw = max_weight if max_weight is not None else 4
    out = [verify_reduced_eigen(mw, r), detailed_balance_plus(mw, r), verify_selfadjoint(mw, r)]
    out += verify_orthogonality(r, min(mw, 3), grid, diag_tol=tol)
    out.append(_reduced_oracle(r.with_rank(1)))
    return out


def suite_oracle(params, max_weight=None, **_):
    """Rank-one engines against the independent recurrence oracles (degrees <= 5)."""
    deg = max_weight if max_weight is not None else 5
    p1 = params.with_rank(1)
    out = []
    if p1.mode != "that0-zero":
        from .koornwinder import compute_mk_polynomial
        from .whittaker import compute_whittaker

        ora = askey_wilson_oracle(deg, p1.that, p1.q)
        z = t_zero(p1)
        for name, engine, p in (("oracle-mk", compute_mk_polynomial, p1),
                                ("oracle-whittaker", compute_whittaker, z)):
            if p.mode != "generic-t" and engine is compute_mk_polynomial:
                continue
            failures = [((k,), engine((k,), p) - ora[k]) for k in range(deg + 1)
                        if engine((k,), p) != ora[k]]
            out.append(exact_report(name, failures, p, checked=deg + 1))
    out.append(_reduced_oracle(reduced_params(p1), deg))
    return out


def _reduced_oracle(r, deg=5):
    from .whittaker import compute_whittaker

    ora = continuous_dual_q_hahn_oracle(deg, r.that[1:], r.q)
    failures = []
    for k in range(deg + 1):
        p = compute_whittaker((k,), r)
        if p != ora[k]:
            failures.append(((k,), p - ora[k]))
    return exact_report("oracle-q-hahn", failures, r, checked=deg + 1)


def _max_coeff_gap(polys, ref):
    gap = 0.0
    for lam, p in polys.items():
        d = p - ref[lam]
        gap = max([gap] + [abs(float(v)) for v in d.coeffs.values()])
    return gap


LIMIT_STEPS = (3, 4, 5)
RATIO_RANGE = (8.0, 12.0)


def _steps():
    return ", ".join(f"1e-{k}" for k in LIMIT_STEPS)


def _ratio_report(name, gaps, params, notes):
    ratios = [a / b if b else float("inf") for a, b in zip(gaps, gaps[1:])]
    lo, hi = RATIO_RANGE
    worst = max(max(lo - r, r - hi, 0.0) for r in ratios)
    return numeric_report(name, worst, 0.0, params,
                          notes + [f"errors {[f'{g:.3e}' for g in gaps]}", f"ratios {[round(r, 4) for r in ratios]}"])


def suite_limits(params, max_weight=None, **_):
    """Linear approach of t -> 0 and that_0 -> 0 (error ratios in [8, 12])."""
    from .koornwinder import compute_mk_polynomial
    from .whittaker import compute_whittaker

    mw = max_weight if max_weight is not None else 3
    lams = partitions(params.n, mw)
    out = []
    z = t_zero(params)
    ref = {lam: compute_whittaker(lam, z) for lam in lams}
    gaps = []
    for k in LIMIT_STEPS:
        pt = z.at_t(exact(1) / 10**k)
        gaps.append(_max_coeff_gap({lam: compute_mk_polynomial(lam, pt) for lam in lams}, ref))
    out.append(_ratio_report("limit-t", gaps, params, [f"t = {_steps()}, |lam| <= {mw}"]))

    r = reduced_params(params)
    ref = {lam: compute_whittaker(lam, r) for lam in lams}
    gaps = []
    for k in LIMIT_STEPS:
        # t-zero mode needs that_1 that_2 that_3 > 0; ParamSet reports the violation otherwise
        pk = ParamSet(r.n, r.q, 0, (exact(1) / 10**k,) + r.that[1:], "t-zero", name=r.name)
        gaps.append(_max_coeff_gap({lam: compute_whittaker(lam, pk) for lam in lams}, ref))
    out.append(_ratio_report("limit-that0", gaps, r, [f"that_0 = {_steps()}, |lam| <= {mw}"]))
    return out


DN_PRESET_THAT = ("1", "-1", "1/2", "-1/2")


def suite_dn(params, max_weight=None, **_):
    """u(lam) = 0 when that_0 = -that_1 and that_2 = -that_3 = sqrt(q).

    Then t_0 = that_0, so the Toda parameters t_r coincide with the that_r.
    """
    from .toda import potential_u

    mw = max_weight if max_weight is not None else 4
    z = t_zero(params)
    th, s = z.that, z.sqrt_q
    if not (th[0] == -th[1] != 0 and th[2] == s and th[3] == -s):
        raise ParameterError("the D_n check needs that_0 = -that_1 and that_2 = -that_3 = sqrt(q)")
    failures, count = [], 0
    for lam in partitions(z.n, mw):
        u = potential_u(lam, z)
        count += 1
        if u:
            failures.append((lam, u))
    return [exact_report("dn-potential", failures, z, checked=count)]


_RUNNERS = {name: globals()[f"suite_{name}"] for name in SUITES}


def run_suite(name: str, params: ParamSet, **opts):
    """Run one suite, filling wall times."""
    if name not in _RUNNERS:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    reports: list = []
    with timed(reports):
        reports.extend(_RUNNERS[name](params, **opts))
    return reports


__all__ = ["SUITES", "run_suite", "t_zero", "reduced_params"] + [f"suite_{s}" for s in SUITES]
