"""The t = 0 layer: deformed hyperoctahedral q-Whittaker polynomials.

p_lam is the monic joint eigenfunction of the commuting dual operators
H_1, ..., H_n.  Since H_1 alone has repeated diagonal entries (its eigenvalue
only sees lam_1), the construction runs triangular back-substitution against
a combination sum_l c_l H_l with distinct diagonal entries on the down-set.

Lattice functions are plain dicts ``Partition -> scalar`` (finite support).
"""
from __future__ import annotations

import itertools
import json
from functools import lru_cache

import numpy as np

from .exactnum import ONE, ZERO, fmt, qpoch_finite
from .koornwinder import mk_norm0
from .params import ParamSet, ParameterError
from .qdiff import DiagonalCollisionError, Term, apply_operator, triangular_eigenvector
from .report import exact_report
from .weyl import InvariantPoly, dominated, partitions, unit

LatticeFn = dict

PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)
MAX_REDRAWS = 8


def _require_t_zero(params):
    if params.mode not in ("t-zero", "that0-zero", "extended-boundary"):
        raise ParameterError(f"the t = 0 layer needs t-zero or that0-zero mode, not {params.mode}")


def _vadd(*vs):
    return tuple(sum(x) for x in zip(*vs))


@lru_cache(maxsize=None)
def dual_operator_terms(params: ParamSet, l: int) -> tuple:
    """Terms of H_l = sum_{J, eps} U_{J^c, l-|J|} V_{eps J} T_{eps J}."""
    n, q = params.n, params.q
    if not 1 <= l <= n:
        raise ValueError(f"level l must lie in 1..{n}")
    idx = range(n)
    terms = []

    def single(j, s):
        e = unit(n, j, s)
        return [(params.that[r], e) for r in range(4)], [(ONE, _vadd(e, e)), (q, _vadd(e, e))]

    for size in range(0, l + 1):
        for J in itertools.combinations(idx, size):
            rest = [k for k in idx if k not in J]
            for epsJ in itertools.product((1, -1), repeat=size):
                ej = dict(zip(J, epsJ))
                num, den = [], []
                for j in J:
                    a, b = single(j, ej[j])
                    num += a
                    den += b
                    for k in rest:
                        for s in (1, -1):
                            den.append((ONE, _vadd(unit(n, j, ej[j]), unit(n, k, s))))
                for j, k in itertools.combinations(J, 2):
                    a = _vadd(unit(n, j, ej[j]), unit(n, k, ej[k]))
                    den += [(ONE, a), (q, a)]
                shift = tuple(ej.get(i, 0) for i in idx)
                for I in itertools.combinations(rest, l - size):
                    K_minus_I = [k for k in rest if k not in I]
                    for epsI in itertools.product((1, -1), repeat=len(I)):
                        ei = dict(zip(I, epsI))
                        num2, den2 = list(num), list(den)
                        for j in I:
                            a, b = single(j, ei[j])
                            num2 += a
                            den2 += b
                            for k in K_minus_I:
                                for s in (1, -1):
                                    den2.append((ONE, _vadd(unit(n, j, ei[j]), unit(n, k, s))))
                        for j, k in itertools.combinations(I, 2):
                            a = _vadd(unit(n, j, ei[j]), unit(n, k, ei[k]))
                            den2 += [(ONE, a), (1 / q, tuple(-x for x in a))]
                        coef = ONE if len(I) % 2 == 0 else -ONE
                        terms.append(Term(coef, tuple(num2), tuple(den2), ((ONE, shift),)))
    return tuple(terms)


def apply_dual_Hl(p: InvariantPoly, l: int, params: ParamSet, *, check_points: int = 2) -> InvariantPoly:
    _require_t_zero(params)
    if p.n != params.n:
        raise ParameterError(f"polynomial rank {p.n} differs from parameter rank {params.n}")
    return apply_operator(dual_operator_terms(params, l), p, params.q, check_points=check_points)


def apply_dual_H(p: InvariantPoly, params: ParamSet, *, check_points: int = 2) -> InvariantPoly:
    return apply_dual_Hl(p, 1, params, check_points=check_points)


def dual_eigenvalue(lam, l: int, params: ParamSet):
    """E_{lam,l}; the t_0^2 correction sits on the top level l = n only."""
    q, n = params.q, params.n
    head = sum(lam[: l - 1])
    out = q**-head * (q ** -lam[l - 1] - 1)
    if l == n:
        out += params.t0_sq * q ** -sum(lam[: n - 1]) * (q ** lam[n - 1] - 1)
    return out


@lru_cache(maxsize=None)
def _dual_image(mu, l, params):
    return apply_dual_Hl(InvariantPoly.monomial(mu), l, params)


def combined_weights(lam, params: ParamSet) -> tuple:
    """Weights c_l with pairwise distinct sum_l c_l E_{mu,l} on the down-set of lam.

    Returns ``(weights, redraws)``.  The first try uses the first n primes; each
    re-draw shifts c_l by l * attempt.
    """
    n = params.n
    basis = dominated(tuple(lam))
    for attempt in range(MAX_REDRAWS + 1):
        w = tuple(PRIMES[l] + attempt * (l + 1) for l in range(n))
        diag = [sum(w[l - 1] * dual_eigenvalue(mu, l, params) for l in range(1, n + 1)) for mu in basis]
        if len(set(diag)) == len(diag):
            return w, attempt
    raise DiagonalCollisionError(f"no separating weights for the down-set of {lam} after {MAX_REDRAWS} re-draws")


def compute_whittaker(lam, params: ParamSet, weights=None) -> InvariantPoly:
    _require_t_zero(params)
    lam = tuple(lam)
    if weights is None:
        weights, _ = combined_weights(lam, params)
    n = params.n
    basis = dominated(lam)
    images = {}
    for mu in basis:
        img = InvariantPoly(n)
        for l in range(1, n + 1):
            img = img + _dual_image(mu, l, params).scale(weights[l - 1])
        images[mu] = img

    def diag(mu):
        return sum((weights[l - 1] * dual_eigenvalue(mu, l, params) for l in range(1, n + 1)), ZERO)

    return triangular_eigenvector(lam, basis, images, diag)


# norms, wave functions, transforms -------------------------------------------

def lattice_norm(lam, params: ParamSet):
    """Exact Delta_lam / Delta_0 (t = 0; also covers that_0 = 0)."""
    _require_t_zero(params)
    n, q, th = params.n, params.q, params.that
    t0sq = params.t0_sq
    ln = lam[-1]
    out = ONE
    if n >= 2:
        out /= qpoch_finite(q * t0sq, q, lam[-2] + ln)
    # (t0^2)_m / (1 - t0^2) = (q t0^2)_{m-1}: removes the 0/0 at t0^2 = 1
    if ln:
        out *= (1 - t0sq * q ** (2 * ln)) * qpoch_finite(q * t0sq, q, ln - 1)
    out /= qpoch_finite(q, q, ln)
    for r in (1, 2, 3):
        others = [th[s] for s in (1, 2, 3) if s != r]
        out *= qpoch_finite(th[0] * th[r], q, ln) / qpoch_finite(others[0] * others[1], q, ln)
    for j in range(n - 1):
        out /= qpoch_finite(q, q, lam[j] - lam[j + 1])
    return out


def reduced_lattice_norm(lam, params: ParamSet):
    """Delta_lam / Delta_0 written directly in the that_0 = 0 form."""
    q, th = params.q, params.that
    ln = lam[-1]
    den = qpoch_finite(q, q, ln)
    for r, s in itertools.combinations((1, 2, 3), 2):
        den *= qpoch_finite(th[r] * th[s], q, ln)
    for j in range(len(lam) - 1):
        den *= qpoch_finite(q, q, lam[j] - lam[j + 1])
    return 1 / den


def norm0(params: ParamSet) -> float:
    """Delta_0 as the t -> 0 value of the generic-t constant."""
    return mk_norm0(params)


def wave_prefactor(lam, params: ParamSet):
    """(t_0^2)_{2 lam_n} / prod_r (t_0 t_r)_{lam_n}; identically 1 when that_0 = 0."""
    _require_t_zero(params)
    q, ln = params.q, lam[-1]
    # (t0^2)_{2m} / (t0^2)_m = (t0^2 q^m)_m, finite also at t0^2 = 1
    out = qpoch_finite(params.t0_sq * q**ln, q, ln)
    for r in range(1, 4):
        d = qpoch_finite(params.t0_tr(r), q, ln)
        if not d:
            raise ZeroDivisionError(f"wave prefactor has a vanishing denominator at {lam}")
        out /= d
    return out


class WhittakerTable:
    """Lazily filled table of p_lam, norm ratios and dual eigenvalues."""

    def __init__(self, params: ParamSet):
        _require_t_zero(params)
        self.params = params
        self._polys = {}
        self.weights = {}

    def poly(self, lam) -> InvariantPoly:
        lam = tuple(lam)
        if lam not in self._polys:
            w, redraws = combined_weights(lam, self.params)
            self.weights[lam] = (w, redraws)
            self._polys[lam] = compute_whittaker(lam, self.params, w)
        return self._polys[lam]

    def wave(self, lam) -> InvariantPoly:
        return self.poly(lam).scale(wave_prefactor(lam, self.params))

    def norm(self, lam):
        return lattice_norm(lam, self.params)

    def eigenvalue(self, lam, l):
        return dual_eigenvalue(lam, l, self.params)

    def build(self, max_size: int):
        for lam in partitions(self.params.n, max_size):
            self.poly(lam)
        return self

    def to_json(self) -> dict:
        n = self.params.n
        entries = []
        for lam, p in sorted(self._polys.items()):
            entries.append({
                "lambda": list(lam),
                "coeffs": p.to_json(),
                "norm_ratio": fmt(self.norm(lam)),
                "eigenvalues": [fmt(self.eigenvalue(lam, l)) for l in range(1, n + 1)],
                "weights": list(self.weights[lam][0]),
            })
        return {"params": self.params.to_json(), "basis": "monomial", "entries": entries}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def wave_function(lam, params: ParamSet, table: WhittakerTable | None = None) -> InvariantPoly:
    table = table or WhittakerTable(params)
    return table.wave(lam)


def forward_transform(f: LatticeFn, xi, params: ParamSet, table: WhittakerTable | None = None):
    """(F f)(xi) = sum_lam f(lam) conj(psi_xi(lam)) Delta_lam.

    ``xi`` is one point (shape (n,), complex result) or an array of points
    (shape (M, n), array result).  psi is real on the torus, so conj is a no-op there.
    """
    from .quadrature import evaluate_points

    table = table or WhittakerTable(params)
    d0 = norm0(params)
    single = np.ndim(xi) == 1
    pts = np.atleast_2d(np.asarray(xi, dtype=float))
    total = np.zeros(len(pts), dtype=complex)
    for lam, val in sorted(f.items()):
        psi = evaluate_points(table.wave(lam), pts)
        total += complex(val) * psi * float(table.norm(lam)) * d0
    return complex(total[0]) if single else total


def inverse_transform(fhat, lam, params: ParamSet, grid: int = 64,
                      table: WhittakerTable | None = None) -> complex:
    """(F^-1 fhat)(lam) = int_A fhat(xi) psi_xi(lam) weight(xi) dxi by torus quadrature.

    ``fhat`` is a vectorized callable on an array of points of shape (M, n) and
    must be W-invariant (as every F f is).
    """
    from .quadrature import alcove_integral, grid_offset, torus_grid

    table = table or WhittakerTable(params)
    g = torus_grid(params.n, grid, grid_offset(params))
    psi = g.evaluate(table.wave(lam))
    return complex(alcove_integral(fhat(g.points) * psi, g, params))


# exact verification ----------------------------------------------------------

def verify_dual_eigen(max_size: int, params: ParamSet, table: WhittakerTable | None = None):
    """H_l p_lam = E_{lam,l} p_lam for every level l and |lam| <= max_size."""
    table = table or WhittakerTable(params)
    failures, count = [], 0
    redraws = 0
    for lam in partitions(params.n, max_size):
        p = table.poly(lam)
        redraws += table.weights[lam][1]
        for l in range(1, params.n + 1):
            res = apply_dual_Hl(p, l, params) - p.scale(dual_eigenvalue(lam, l, params))
            count += 1
            if res:
                failures.append(((lam, l), res))
    notes = [f"combination weights re-drawn {redraws} times"] if redraws else None
    return exact_report("dual-eigen", failures, params, notes=notes, checked=count)


def _apply_linear(p: InvariantPoly, l, params):
    out = InvariantPoly(params.n)
    for mu, c in sorted(p.coeffs.items()):
        out = out + _dual_image(mu, l, params).scale(c)
    return out


def verify_dual_commutativity(max_size: int, params: ParamSet):
    """[H_l, H_k] m_mu = 0 for all l < k and |mu| <= max_size."""
    _require_t_zero(params)
    n = params.n
    failures, count = [], 0
    for mu in partitions(n, max_size):
        for l, k in itertools.combinations(range(1, n + 1), 2):
            a = _apply_linear(_dual_image(mu, k, params), l, params)
            b = _apply_linear(_dual_image(mu, l, params), k, params)
            count += 1
            if a != b:
                failures.append(((mu, l, k), a - b))
    return exact_report("dual-commutativity", failures, params, checked=count)


__all__ = [
    "LatticeFn", "dual_operator_terms", "apply_dual_H", "apply_dual_Hl", "dual_eigenvalue",
    "combined_weights", "compute_whittaker", "lattice_norm", "reduced_lattice_norm", "norm0",
    "wave_prefactor", "WhittakerTable", "wave_function", "forward_transform", "inverse_transform",
    "verify_dual_eigen", "verify_dual_commutativity",
]

