"""Independent one-variable oracle: monic Askey-Wilson polynomials.

Built from the classical three-term recurrence in X = z + 1/z,

    P_{k+1} = (X - b_k) P_k - A_{k-1} C_k P_{k-1},
    b_k = a + 1/a - (A_k + C_k),

and converted to the orbit-sum basis m_k = z^k + z^-k (m_0 = 1).  Nothing here
shares code with the operator engines.
"""
from __future__ import annotations

from math import comb

from .exactnum import ONE, ZERO, exact
from .weyl import InvariantPoly


def recurrence_coefficients(k: int, a, b, c, d, q):
    """(A_k, C_k) of the monic Askey-Wilson recurrence."""
    abcd = a * b * c * d
    if k == 0:
        # C_0 carries 1 - q^0, and the numerator factor 1 - abcd q^(k-1) of A_0
        # cancels 1 - abcd q^(2k-1): both denominators may vanish (abcd = q or q^2)
        A = (1 - a * b) * (1 - a * c) * (1 - a * d) / (a * (1 - abcd))
        return A, ZERO
    A = ((1 - a * b * q**k) * (1 - a * c * q**k) * (1 - a * d * q**k) * (1 - abcd * q ** (k - 1))
         / (a * (1 - abcd * q ** (2 * k - 1)) * (1 - abcd * q ** (2 * k))))
    C = (a * (1 - q**k) * (1 - b * c * q ** (k - 1)) * (1 - b * d * q ** (k - 1)) * (1 - c * d * q ** (k - 1))
         / ((1 - abcd * q ** (2 * k - 2)) * (1 - abcd * q ** (2 * k - 1))))
    return A, C


def _x_power_in_m(k: int) -> dict:
    """X^k = sum_i binom(k, i) z^(k - 2i) collected on m_j."""
    out = {}
    for i in range(k + 1):
        e = abs(k - 2 * i)
        out[e] = out.get(e, 0) + comb(k, i)
    # z^e and z^-e both land in m_e for e > 0, each counted once per orbit element
    return {e: (v if e == 0 else v // 2) for e, v in out.items()}


def askey_wilson_monic(degree: int, params4, q) -> list:
    """Monic P_0..P_degree as coefficient lists in powers of X."""
    a, b, c, d = (exact(x) for x in params4)
    q = exact(q)
    polys = [[ONE]]
    prev = None
    for k in range(degree):
        A, C = recurrence_coefficients(k, a, b, c, d, q)
        bk = a + 1 / a - (A + C)
        cur = polys[-1]
        nxt = [ZERO] + list(cur)
        for i, v in enumerate(cur):
            nxt[i] -= bk * v
        if prev is not None:
            A_prev, _ = recurrence_coefficients(k - 1, a, b, c, d, q)
            for i, v in enumerate(prev):
                nxt[i] -= A_prev * C * v
        prev = cur
        polys.append(nxt)
    return polys


def to_orbit_basis(xpoly) -> InvariantPoly:
    out = {}
    for k, v in enumerate(xpoly):
        if not v:
            continue
        for e, m in _x_power_in_m(k).items():
            out[(e,)] = out.get((e,), ZERO) + v * m
    return InvariantPoly(1, out)


def askey_wilson_oracle(degree: int, params4, q) -> list:
    """Monic Askey-Wilson polynomials p_0..p_degree as rank-one InvariantPolys."""
    return [to_orbit_basis(p) for p in askey_wilson_monic(degree, params4, q)]


def continuous_dual_q_hahn_oracle(degree: int, abc, q) -> list:
    """Monic continuous dual q-Hahn polynomials (Askey-Wilson with d = 0)."""
    a, b, c = abc
    return askey_wilson_oracle(degree, (a, b, c, ZERO), q)
