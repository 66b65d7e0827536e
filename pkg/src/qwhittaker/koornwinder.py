"""Macdonald-Koornwinder polynomials at generic t.

The monic polynomials p_lam are built exactly from the triangular action of
the second-order q-difference operator on the orbit-sum basis.  Normalized
polynomials P_lam = c_lam p_lam, the exact norm ratios Delta_lam / Delta_0 and
the Pieri coefficients V_j^{+-} are rational in (q, t, that_r) because t_0
only ever occurs through t_0^2 and t_0 t_r.
"""
from __future__ import annotations

import json
from functools import lru_cache

from .exactnum import ONE, ZERO, power, qpoch_finite, qpoch_infinite
from .params import ParamSet, ParameterError, preset
from .qdiff import Term, apply_operator, triangular_eigenvector
from .weyl import InvariantPoly, dominated, is_partition, multiply, unit

__all__ = [
    "ParamSet", "preset", "mk_operator_terms", "apply_MK_operator", "mk_eigenvalue",
    "compute_mk_polynomial", "MKTable", "normalization_c", "mk_norm", "mk_norm0",
    "pieri_V", "verify_pieri", "verify_qde",
]


def _e(n, j, s=1):
    return unit(n, j, s)


def _vadd(*vs):
    return tuple(sum(x) for x in zip(*vs))


def _single_factors(params, j, eps):
    """Numerator/denominator binomials of the one-variable part at e_j (0-based)."""
    n = params.n
    ej = _e(n, j, eps)
    num = [(params.that[r], ej) for r in range(4)]
    den = [(ONE, _vadd(ej, ej)), (params.q, _vadd(ej, ej))]
    return num, den


@lru_cache(maxsize=None)
def mk_operator_terms(params: ParamSet) -> tuple:
    """Terms of sum_j V_j(z)(T_j - 1) + V_j(1/z)(T_j^-1 - 1)."""
    n, t = params.n, params.t
    terms = []
    for j in range(n):
        for eps in (1, -1):
            num, den = _single_factors(params, j, eps)
            ej = _e(n, j, eps)
            for k in range(n):
                if k == j:
                    continue
                for s in (1, -1):
                    a = _vadd(ej, _e(n, k, s))
                    num.append((t, a))
                    den.append((ONE, a))
            terms.append(Term(ONE, tuple(num), tuple(den), ((ONE, ej), (-ONE, (0,) * n))))
    return tuple(terms)


def apply_MK_operator(p: InvariantPoly, params: ParamSet, *, check_points: int = 2) -> InvariantPoly:
    if params.mode not in ("generic-t", "t-zero", "extended-boundary"):
        raise ParameterError(f"the q-difference operator needs generic-t or t-zero mode, not {params.mode}")
    if p.n != params.n:
        raise ParameterError(f"polynomial rank {p.n} differs from parameter rank {params.n}")
    return apply_operator(mk_operator_terms(params), p, params.q, check_points=check_points)


def mk_eigenvalue(lam, params: ParamSet):
    n, q, t = params.n, params.q, params.t
    out = ZERO
    for j, lj in enumerate(lam, start=1):
        out += params.t0_sq * power(t, 2 * n - 1 - j) * (q**lj - 1) + power(t, j - 1) * (q**-lj - 1)
    return out


@lru_cache(maxsize=None)
def _mk_image(mu, params):
    return apply_MK_operator(InvariantPoly.monomial(mu), params)


def compute_mk_polynomial(lam, params: ParamSet) -> InvariantPoly:
    """Monic p_lam = m_lam + lower terms, eigenfunction of the q-difference operator."""
    lam = tuple(lam)
    basis = dominated(lam)
    images = {mu: _mk_image(mu, params) for mu in basis}
    return triangular_eigenvector(lam, basis, images, lambda mu: mk_eigenvalue(mu, params))


# normalization and norms ----------------------------------------------------

def _tt(params, j, k):
    """tau_j tau_k (1-based)."""
    return power(params.t, 2 * params.n - j - k) * params.t0_sq


def _t_ratio(params, j, k):
    """tau_j / tau_k = t^(k-j)."""
    return power(params.t, k - j)


def normalization_c(lam, params: ParamSet):
    """c_lam with P_lam = c_lam p_lam."""
    n, q, t = params.n, params.q, params.t
    out = ONE
    for j in range(1, n + 1):
        lj = lam[j - 1]
        num = qpoch_finite(params.tau_sq(j), q, 2 * lj)
        den = ONE
        for r in range(4):
            den *= qpoch_finite(power(t, n - j) * params.t0_tr(r), q, lj)
        out *= num / den
        for k in range(j + 1, n + 1):
            lk = lam[k - 1]
            a, b = _tt(params, j, k), _t_ratio(params, j, k)
            out *= qpoch_finite(a, q, lj + lk) / qpoch_finite(t * a, q, lj + lk)
            out *= qpoch_finite(b, q, lj - lk) / qpoch_finite(t * b, q, lj - lk)
    if not out:
        raise ZeroDivisionError(f"normalization vanishes at {lam}")
    return out


def mk_norm(lam, params: ParamSet):
    """Exact ratio Delta_lam / Delta_0."""
    n, q, t = params.n, params.q, params.t
    out = ONE
    for j in range(1, n + 1):
        lj = lam[j - 1]
        ts = params.tau_sq(j)
        out *= (1 - ts * q ** (2 * lj)) / (1 - ts)
        for r in range(4):
            out *= qpoch_finite(power(t, n - j) * params.t0_tr(r), q, lj)
            out /= qpoch_finite(q * power(t, n - j) * params.t0_over_tr(r), q, lj)
        for k in range(j + 1, n + 1):
            lk = lam[k - 1]
            for x, m in ((_tt(params, j, k), lj + lk), (_t_ratio(params, j, k), lj - lk)):
                out *= (1 - x * q**m) / (1 - x)
                out *= qpoch_finite(t * x, q, m) / qpoch_finite(q * x / t, q, m)
    return out


def mk_norm0(params: ParamSet, tol: float = 1e-17) -> float:
    """Delta_0 by truncated infinite products (valid at t = 0 with 0^0 = 1)."""
    n, q, t = params.n, float(params.q), params.t
    th = [float(x) for x in params.that]
    prod4 = float(params.that_product)
    out = 1.0
    for j in range(1, n + 1):
        num = qpoch_infinite(q, q, tol) * qpoch_infinite(float(power(t, j)), q, tol)
        tp = float(power(t, n - j))
        for r in range(4):
            for s in range(r + 1, 4):
                num *= qpoch_infinite(th[r] * th[s] * tp, q, tol)
        den = qpoch_infinite(float(t), q, tol) * qpoch_infinite(prod4 * float(power(t, 2 * n - j - 1)), q, tol)
        out *= (num / den).real
    return out


# Pieri rule -------------------------------------------------------------------

def pieri_V(lam, j: int, sign: int, params: ParamSet):
    """V_j^+ (sign=+1) or V_j^- (sign=-1) at lam, j 1-based; zero when lam +- e_j leaves Lambda.

    Off the cone the formula can be 0/0 (e.g. V_n^- at lam_n = 0 when tau_n^2 = q).
    """
    n, q, t = params.n, params.q, params.t
    if not is_partition(tuple(x + sign * (i == j - 1) for i, x in enumerate(lam))):
        return ZERO
    lj = lam[j - 1]
    tau_hat1 = params.tau_hat(1)
    ts = params.tau_sq(j)
    if sign > 0:
        val = 1 / tau_hat1
        for r in range(4):
            val *= 1 - power(t, n - j) * params.t0_tr(r) * q**lj
        val /= (1 - ts * q ** (2 * lj)) * (1 - ts * q ** (2 * lj + 1))
    else:
        val = tau_hat1
        for r in range(4):
            val *= 1 - power(t, n - j) * params.t0_over_tr(r) * q**lj
        val /= (1 - ts * q ** (2 * lj)) * (1 - ts * q ** (2 * lj - 1))
    tf = t if sign > 0 else 1 / t
    for k in range(1, n + 1):
        if k == j:
            continue
        lk = lam[k - 1]
        a = _tt(params, j, k) * q ** (lj + lk)
        b = _t_ratio(params, j, k) * q ** (lj - lk)
        val *= (1 - tf * a) / (1 - a) * (1 - tf * b) / (1 - b)
    return val


def _omega1(n):
    return InvariantPoly.monomial((1,) + (0,) * (n - 1))


def verify_pieri(lam, params: ParamSet, table: "MKTable | None" = None) -> InvariantPoly:
    """LHS - RHS of the Pieri recurrence for P_lam; identically zero when it holds."""
    lam = tuple(lam)
    n = params.n
    table = table or MKTable(params)
    P = table.normalized
    shift = sum((params.tau_hat(j) + 1 / params.tau_hat(j) for j in range(1, n + 1)), ZERO)
    lhs = multiply(P(lam), _omega1(n)) - P(lam).scale(shift)
    rhs = InvariantPoly(n)
    for j in range(1, n + 1):
        th = params.tau_hat(j)
        for sign in (1, -1):
            mu = tuple(x + sign * (i == j - 1) for i, x in enumerate(lam))
            if not is_partition(mu):
                continue
            V = pieri_V(lam, j, sign, params)
            step = th if sign > 0 else 1 / th
            rhs = rhs + (P(mu).scale(step) - P(lam)).scale(V)
    return lhs - rhs


def verify_qde(lam, params: ParamSet, table: "MKTable | None" = None) -> InvariantPoly:
    table = table or MKTable(params)
    p = table.poly(lam)
    return apply_MK_operator(p, params, check_points=1) - p.scale(mk_eigenvalue(lam, params))


class MKTable:
    """Lazily filled table of monic and normalized MK polynomials."""

    def __init__(self, params: ParamSet):
        self.params = params
        self._polys = {}

    def poly(self, lam) -> InvariantPoly:
        lam = tuple(lam)
        if lam not in self._polys:
            self._polys[lam] = compute_mk_polynomial(lam, self.params)
        return self._polys[lam]

    def normalized(self, lam) -> InvariantPoly:
        return self.poly(lam).scale(normalization_c(lam, self.params))

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "basis": "monomial",
            "entries": [{"lambda": list(lam), "coeffs": p.to_json()} for lam, p in sorted(self._polys.items())],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

