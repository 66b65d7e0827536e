"""Torus quadrature for the orthogonality weights.

All integrands used here are W-invariant and 2pi-periodic, so the alcove
integral equals the full-torus integral divided by |W| = 2^n n!.  A uniform
grid (periodic trapezoid rule) then converges spectrally.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .exactnum import DEFAULT_TOL, qpoch_infinite
from .params import ParamSet
from .report import numeric_report
from .weyl import InvariantPoly, partitions

VARIANTS = ("MK", "whittaker", "reduced")


def weyl_order(n: int) -> int:
    return 2**n * math.factorial(n)


@dataclass
class TorusGrid:
    n: int
    N: int
    offset: float = 0.0
    points: np.ndarray = field(init=False, repr=False)
    _mono: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        if self.N < 8 or self.N % 2:
            raise ValueError("grid size N must be even and at least 8")
        axis = 2 * np.pi * (np.arange(self.N) + self.offset) / self.N
        mesh = np.meshgrid(*([axis] * self.n), indexing="ij")
        self.points = np.stack([m.ravel() for m in mesh], axis=1)

    def monomial(self, lam) -> np.ndarray:
        lam = tuple(lam)
        if lam not in self._mono:
            self._mono[lam] = monomial_values(lam, self.points)
        return self._mono[lam]

    def evaluate(self, p: InvariantPoly) -> np.ndarray:
        out = np.zeros(len(self.points))
        for lam, c in sorted(p.coeffs.items()):
            out = out + float(c) * self.monomial(lam)
        return out


def monomial_values(lam, points) -> np.ndarray:
    """m_lam at real points (shape (M, n)): sum over distinct permutations beta of prod_j 2cos(beta_j xi_j)."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    cos_cache = {}
    out = np.zeros(len(points))
    for beta in sorted(set(itertools.permutations(tuple(lam)))):
        term = np.ones(len(points))
        for j, b in enumerate(beta):
            if b:
                if (j, b) not in cos_cache:
                    cos_cache[(j, b)] = 2 * np.cos(b * points[:, j])
                term = term * cos_cache[(j, b)]
        out += term
    return out


def evaluate_points(p: InvariantPoly, points) -> np.ndarray:
    points = np.atleast_2d(np.asarray(points, dtype=float))
    out = np.zeros(len(points))
    for lam, c in sorted(p.coeffs.items()):
        out = out + float(c) * monomial_values(lam, points)
    return out


@lru_cache(maxsize=16)
def torus_grid(n: int, N: int, offset: float = 0.0) -> TorusGrid:
    return TorusGrid(n, N, offset)


def default_grid_size(n: int) -> int:
    return 256 if n <= 2 else 96


def grid_offset(params: ParamSet) -> float:
    """Half-shifted grid when that_r = +-1 puts removable 0/0 points on the torus axes."""
    return 0.5 if any(abs(x) == 1 for x in params.that) else 0.0


def variant_for(params: ParamSet) -> str:
    if params.mode == "generic-t":
        return "MK"
    if params.mode == "that0-zero":
        return "reduced"
    return "whittaker"


def weight_eval(xi, params: ParamSet, variant: str | None = None, tol: float = DEFAULT_TOL):
    """Orthogonality weight (including the 1/(2pi)^n prefactor) at points ``xi`` (shape (M, n) or (n,))."""
    variant = variant or variant_for(params)
    if variant not in VARIANTS:
        raise ValueError(f"unknown weight variant {variant!r}")
    if variant != "MK" and params.t != 0:
        raise ValueError(f"the {variant} weight needs t = 0")
    if variant == "reduced" and params.that[0] != 0:
        raise ValueError("the reduced weight needs that_0 = 0")
    xi = np.atleast_2d(np.asarray(xi, dtype=float))
    n = params.n
    q = float(params.q)
    t = float(params.t)
    th = [float(x) for x in params.that]
    z = np.exp(1j * xi)
    w = np.ones(len(xi))
    for j in range(n):
        num = qpoch_infinite(z[:, j] ** 2, q, tol)
        den = np.ones(len(xi), dtype=complex)
        for r in range(4):
            if th[r]:
                den = den * qpoch_infinite(th[r] * z[:, j], q, tol)
        w = w * np.abs(num / den) ** 2
    for j, k in itertools.combinations(range(n), 2):
        for y in (z[:, j] * z[:, k], z[:, j] / z[:, k]):
            f = qpoch_infinite(y, q, tol)
            if t:
                f = f / qpoch_infinite(t * y, q, tol)
            w = w * np.abs(f) ** 2
    w = w / (2 * np.pi) ** n
    return w if w.shape[0] > 1 else float(w[0])


_weights_cache: dict = {}


def grid_weight(grid: TorusGrid, params: ParamSet, variant: str | None = None) -> np.ndarray:
    variant = variant or variant_for(params)
    key = (params, grid.n, grid.N, grid.offset, variant)
    if key not in _weights_cache:
        with np.errstate(invalid="ignore", divide="ignore"):
            w = weight_eval(grid.points, params, variant)
        _weights_cache[key] = np.nan_to_num(np.asarray(w), nan=0.0, posinf=0.0)
    return _weights_cache[key]


def alcove_integral(values, grid: TorusGrid, params: ParamSet, variant: str | None = None,
                    compensated: bool = False):
    """int_A values * weight dxi = torus mean * (2pi)^n / |W| (fixed summation order)."""
    w = grid_weight(grid, params, variant)
    prod = np.asarray(values) * w
    if compensated:
        if np.iscomplexobj(prod):
            s = complex(math.fsum(prod.real), math.fsum(prod.imag))
        else:
            s = math.fsum(prod)
    else:
        s = prod.sum()
    return s / len(w) * (2 * np.pi) ** grid.n / weyl_order(grid.n)


def inner_product(f: InvariantPoly, g: InvariantPoly, grid: TorusGrid, params: ParamSet,
                  variant: str | None = None) -> float:
    """<f, g> = int_A f conj(g) weight; real because orbit sums are real on the torus."""
    return float(alcove_integral(grid.evaluate(f) * grid.evaluate(g), grid, params, variant))


# orthogonality --------------------------------------------------------------------

def basis_and_norms(params: ParamSet, max_size: int):
    """Normalized basis functions with their exact norm ratios and the numeric Delta_0."""
    variant = variant_for(params)
    lams = partitions(params.n, max_size)
    if variant == "MK":
        from .koornwinder import MKTable, mk_norm, mk_norm0
        table = MKTable(params)
        return variant, [(lam, table.normalized(lam), mk_norm(lam, params)) for lam in lams], mk_norm0(params)
    from .whittaker import WhittakerTable, lattice_norm, norm0
    table = WhittakerTable(params)
    getter = table.poly if variant == "reduced" else table.wave
    return variant, [(lam, getter(lam), lattice_norm(lam, params)) for lam in lams], norm0(params)


def gram_matrix(funcs, grid: TorusGrid, params: ParamSet, variant: str | None = None) -> np.ndarray:
    vals = [grid.evaluate(f) for f in funcs]
    m = len(vals)
    G = np.zeros((m, m))
    for a in range(m):
        for b in range(a, m):
            G[a, b] = G[b, a] = float(alcove_integral(vals[a] * vals[b], grid, params, variant))
    return G


def verify_orthogonality(params: ParamSet, max_size: int = 3, N: int | None = None,
                         diag_tol: float | None = None, offdiag_tol: float = 1e-8):
    """Gram matrix of the normalized basis against 1/Delta_lam; includes int weight = 1/Delta_0."""
    n = params.n
    N = N or default_grid_size(n)
    if diag_tol is None:
        diag_tol = 1e-6 if n <= 2 else 1e-4
    grid = torus_grid(n, N, grid_offset(params))
    variant, basis, d0 = basis_and_norms(params, max_size)
    G = gram_matrix([f for _, f, _ in basis], grid, params, variant)
    diag_err = 0.0
    off_err = 0.0
    for a, (lam, _, ratio) in enumerate(basis):
        expected = 1.0 / (float(ratio) * d0)
        diag_err = max(diag_err, abs(G[a, a] / expected - 1))
        for b in range(a):
            off_err = max(off_err, abs(G[a, b]) / math.sqrt(G[a, a] * G[b, b]))
    total = float(alcove_integral(np.ones(len(grid.points)), grid, params, variant))
    mass_err = abs(total * d0 - 1)
    note = [f"variant {variant}, N = {N}, {len(basis)} basis functions"]
    return [
        numeric_report("ortho-offdiag", off_err, offdiag_tol, params, note),
        numeric_report("ortho-diag", diag_err, diag_tol, params, note),
        numeric_report("ortho-mass", mass_err, diag_tol, params, note + ["int weight vs 1/Delta_0"]),
    ]


# numeric Pieri coefficients ---------------------------------------------------------

def _omega(n, l):
    return InvariantPoly.monomial((1,) * l + (0,) * (n - l))


def pieri_coefficients_numeric(lam, l: int, params: ParamSet, N: int | None = None) -> dict:
    """C_{eps J}(lam) = Delta_{lam + e_{eps J}} int m_{omega_l} P_lam P_{lam + e_{eps J}} weight.

    Keys are move vectors e_{eps J} (including the zero move); moves leaving
    Lambda are skipped.
    """
    n = params.n
    lam = tuple(lam)
    N = N or default_grid_size(n)
    grid = torus_grid(n, N, grid_offset(params))
    variant, basis, d0 = basis_and_norms(params, sum(lam) + l)
    funcs = {mu: (f, ratio) for mu, f, ratio in basis}
    base = grid.evaluate(funcs[lam][0]) * grid.monomial((1,) * l + (0,) * (n - l))
    out = {}
    for size in range(l + 1):
        for J in itertools.combinations(range(n), size):
            for eps in itertools.product((1, -1), repeat=size):
                move = [0] * n
                for j, e in zip(J, eps):
                    move[j] = e
                mu = tuple(a + b for a, b in zip(lam, move))
                if mu not in funcs:
                    continue
                f, ratio = funcs[mu]
                val = alcove_integral(base * grid.evaluate(f), grid, params, variant)
                out[tuple(move)] = float(val) * float(ratio) * d0
    return out


def expected_pieri_level1(lam, params: ParamSet) -> dict:
    """Level-one coefficients from the closed forms: generic t (V_j) or t = 0 (Toda stencil)."""
    n = params.n
    lam = tuple(lam)
    out = {}
    if params.mode == "generic-t":
        from .koornwinder import pieri_V
        diag = sum(float(params.tau_hat(j) + 1 / params.tau_hat(j)) for j in range(1, n + 1))
        for j in range(1, n + 1):
            for sign in (1, -1):
                mu = tuple(x + sign * (i == j - 1) for i, x in enumerate(lam))
                if min(mu) < 0 or any(mu[i] < mu[i + 1] for i in range(n - 1)):
                    continue
                V = pieri_V(lam, j, sign, params)
                th = params.tau_hat(j)
                out[tuple(sign * (i == j - 1) for i in range(n))] = float(V * (th if sign > 0 else 1 / th))
                diag -= float(V)
        out[(0,) * n] = diag
        return out
    from .toda import h_stencil, reduced_h_stencil
    st = reduced_h_stencil(lam, params) if params.mode == "that0-zero" else h_stencil(lam, params)
    for mu, c in st.items():
        out[tuple(a - b for a, b in zip(mu, lam))] = float(c)
    return out


def verify_pieri_numeric(params: ParamSet, max_size: int = 2, N: int | None = None, tol: float = 1e-6):
    worst = 0.0
    for lam in partitions(params.n, max_size):
        num = pieri_coefficients_numeric(lam, 1, params, N)
        exp = expected_pieri_level1(lam, params)
        for move in set(num) | set(exp):
            worst = max(worst, abs(num.get(move, 0.0) - exp.get(move, 0.0)))
    return numeric_report("pieri-numeric", worst, tol, params, [f"level 1, |lam| <= {max_size}"])


__all__ = [
    "TorusGrid", "torus_grid", "monomial_values", "evaluate_points", "weyl_order", "weight_eval", "grid_weight", "alcove_integral",
    "inner_product", "gram_matrix", "verify_orthogonality", "pieri_coefficients_numeric",
    "expected_pieri_level1", "verify_pieri_numeric", "default_grid_size", "variant_for", "grid_offset",
]
