"""Scattering data: pair and boundary factors, the factorized S-matrix,
square-root branches, the anti-invariant free kernel and the free transform.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

import numpy as np

from .exactnum import DEFAULT_TOL, qpoch_infinite
from .params import ParamSet
from .report import numeric_report
from .weyl import rho, signed_permutations


def _poch(x, params, tol=DEFAULT_TOL):
    return qpoch_infinite(x, float(params.q), tol)


def s_pair(x, params: ParamSet):
    q = float(params.q)
    e = np.exp(1j * np.asarray(x, dtype=float))
    return _poch(q * e, params) / _poch(q / e, params)


def s_boundary(x, params: ParamSet):
    q = float(params.q)
    e = np.exp(1j * np.asarray(x, dtype=float))
    val = _poch(q * e**2, params) / _poch(q / e**2, params)
    for th in params.that:
        th = float(th)
        if th:
            val = val * _poch(th / e, params) / _poch(th * e, params)
    return val


def sqrt_branch(x, kind: str, params: ParamSet):
    """The prescribed unimodular square roots of s (kind="pair") or s_0 (kind="boundary")."""
    q = float(params.q)
    e = np.exp(1j * np.asarray(x, dtype=float))
    if kind == "pair":
        a = _poch(q * e, params)
        return a / np.abs(a)
    if kind == "boundary":
        a = _poch(q * e**2, params)
        val = a / np.abs(a)
        for th in params.that:
            th = float(th)
            if th:
                b = _poch(th * e, params)
                val = val * np.abs(b) / b
        return val
    raise ValueError(f"unknown branch kind {kind!r}")


@dataclass
class SMatrixValue:
    value: complex
    pair_factors: list
    boundary_factors: list
    root: complex


def s_matrix(xi, params: ParamSet) -> SMatrixValue:
    xi = [float(x) for x in xi]
    pairs, roots = [], []
    for j, k in itertools.combinations(range(len(xi)), 2):
        for x in (xi[j] - xi[k], xi[j] + xi[k]):
            pairs.append(complex(s_pair(x, params)))
            roots.append(complex(sqrt_branch(x, "pair", params)))
    bounds = [complex(s_boundary(x, params)) for x in xi]
    roots += [complex(sqrt_branch(x, "boundary", params)) for x in xi]
    value = complex(np.prod(pairs + bounds)) if pairs or bounds else 1 + 0j
    root = complex(np.prod(roots)) if roots else 1 + 0j
    return SMatrixValue(value, pairs, bounds, root)


def in_regular_alcove(xi, tol: float = 1e-12) -> bool:
    """xi in the open alcove with nonzero, pairwise distinct |sin xi_j|."""
    xi = [float(x) for x in xi]
    walls = [math.pi] + xi + [0.0]
    if not all(a > b for a, b in zip(walls, walls[1:])):
        return False
    s = [abs(math.sin(x)) for x in xi]
    if min(s) <= tol:
        return False
    return all(abs(a - b) > tol for a, b in itertools.combinations(s, 2))


def regularizing_element(xi):
    """w = (sigma, eps) with w grad E positive and decreasing; grad E = -2 sin xi."""
    g = [-2 * math.sin(x) for x in xi]
    sigma = tuple(sorted(range(len(xi)), key=lambda j: -abs(g[j])))
    eps = tuple(1 if g[s] > 0 else -1 for s in sigma)
    return sigma, eps


def s_operator_symbol(xi, params: ParamSet) -> complex:
    if not in_regular_alcove(xi):
        raise ValueError(f"{tuple(xi)} is not in the regular part of the alcove")
    sigma, eps = regularizing_element(xi)
    wxi = [eps[j] * float(xi[sigma[j]]) for j in range(len(xi))]
    return s_matrix(wxi, params).value


def chi_kernel(lam, xi) -> np.ndarray | complex:
    """Anti-invariant free kernel at points xi (shape (n,) or (M, n))."""
    lam = tuple(lam)
    n = len(lam)
    arr = np.atleast_2d(np.asarray(xi, dtype=float))
    v = tuple(a + b for a, b in zip(rho(n), lam))
    total = np.zeros(len(arr), dtype=complex)
    for sigma, eps, sgn in signed_permutations(n):
        wv = [eps[j] * v[sigma[j]] for j in range(n)]
        total += sgn * np.exp(1j * (arr @ np.asarray(wv, dtype=float)))
    out = total / ((2 * np.pi) ** (n / 2) * (1j) ** (n * n))
    return out if np.ndim(xi) > 1 else complex(out[0])


def free_transform(f: dict, xi) -> np.ndarray:
    """(F_0 f)(xi) = sum_lam f(lam) conj(chi_xi(lam))."""
    arr = np.atleast_2d(np.asarray(xi, dtype=float))
    out = np.zeros(len(arr), dtype=complex)
    for lam, val in sorted(f.items()):
        out += complex(val) * np.conj(chi_kernel(lam, arr))
    return out


def _alcove_mask(points):
    n = points.shape[1]
    mask = (points[:, 0] < np.pi) & (points[:, n - 1] > 0)
    for j in range(n - 1):
        mask &= points[:, j] > points[:, j + 1]
    return mask


def inverse_free_transform(fhat, lam, n: int, N: int = 512, method: str = "mask") -> complex:
    """int_A fhat(xi) chi_xi(lam) dxi.

    method="mask" restricts a half-shifted torus grid to the open alcove (first
    order accurate for general fhat); method="torus" integrates over the full
    torus divided by |W|, exact up to spectral error when fhat is anti-invariant.
    """
    from .quadrature import torus_grid, weyl_order

    if method == "torus":
        g = torus_grid(n, N)
        vals = fhat(g.points) * chi_kernel(lam, g.points)
        return complex(vals.sum() / len(vals) * (2 * np.pi) ** n / weyl_order(n))
    if method != "mask":
        raise ValueError(f"unknown method {method!r}")
    g = torus_grid(n, N, 0.5)
    pts = g.points[_alcove_mask(g.points)]
    vals = fhat(pts) * chi_kernel(lam, pts)
    return complex(vals.sum() * (2 * np.pi / N) ** n)


def chi_gram(n: int, lams, N: int = 256) -> np.ndarray:
    """int_A chi(lam) conj(chi(mu)); the integrand is W-invariant, so torus / |W| applies."""
    from .quadrature import torus_grid, weyl_order

    g = torus_grid(n, N)
    vals = [chi_kernel(lam, g.points) for lam in lams]
    m = len(lams)
    G = np.zeros((m, m), dtype=complex)
    for a in range(m):
        for b in range(m):
            G[a, b] = (vals[a] * np.conj(vals[b])).sum() / len(g.points) * (2 * np.pi) ** n / weyl_order(n)
    return G


def verify_scattering(params: ParamSet, trials: int = 100, seed: int = 0, tol: float = 1e-12):
    rng = random.Random(seed)
    n = params.n
    xs = np.array([rng.uniform(-math.pi, math.pi) for _ in range(trials)])
    unit_err = max(float(np.max(np.abs(np.abs(s_pair(xs, params)) - 1))),
                   float(np.max(np.abs(np.abs(s_boundary(xs, params)) - 1))))
    S_err = 0.0
    for _ in range(trials):
        xi = [rng.uniform(-math.pi, math.pi) for _ in range(n)]
        S_err = max(S_err, abs(abs(s_matrix(xi, params).value) - 1))
    br_err = max(float(np.max(np.abs(sqrt_branch(xs, "pair", params) ** 2 - s_pair(xs, params)))),
                 float(np.max(np.abs(sqrt_branch(xs, "boundary", params) ** 2 - s_boundary(xs, params)))))
    lams = [(k,) for k in range(5)]
    G = chi_gram(1, lams, 256)
    chi_err = float(np.max(np.abs(G - np.eye(len(lams)))))
    return [
        numeric_report("scatter-unimodular", max(unit_err, S_err), tol, params, [f"{trials} random inputs"]),
        numeric_report("scatter-branch", br_err, tol, params, [f"{trials} random inputs"]),
        numeric_report("chi-orthonormal", chi_err, 1e-6, params, ["n = 1, lam, mu <= 4"]),
    ]


__all__ = [
    "s_pair", "s_boundary", "sqrt_branch", "SMatrixValue", "s_matrix", "in_regular_alcove",
    "regularizing_element", "s_operator_symbol", "chi_kernel", "free_transform",
    "inverse_free_transform", "chi_gram", "verify_scattering",
]
