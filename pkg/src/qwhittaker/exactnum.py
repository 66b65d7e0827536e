"""Exact rational scalars and q-Pochhammer symbols.

Exact scalars are :class:`gmpy2.mpq` values (always in lowest terms, positive
denominator).  Floating evaluation goes through numpy complex arrays.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

import gmpy2
import numpy as np
from gmpy2 import mpq

Q = mpq
ZERO = mpq(0)
ONE = mpq(1)

DEFAULT_TOL = 1e-17


class NotASquareError(ValueError):
    pass


def exact(x) -> mpq:
    """Coerce ints, Fractions, mpq and ``"num/den"`` strings to an exact scalar.

    Floats are rejected: they would silently leak rounding into exact paths.
    """
    if isinstance(x, mpq):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, (int, Fraction, Rational)):
        return mpq(x.numerator, x.denominator) if not isinstance(x, int) else mpq(x)
    if isinstance(x, str):
        s = x.strip()
        if "/" in s:
            num, den = s.split("/")
            return mpq(int(num), int(den))
        return mpq(Fraction(s))
    if type(x).__name__ == "mpz":
        return mpq(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact scalar")


def fmt(x) -> str:
    """Serialize an exact scalar as ``"num/den"`` (or ``"num"`` if integral)."""
    x = exact(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def exact_sqrt(x) -> mpq:
    """Nonnegative rational square root; raises if ``x`` is not a rational square."""
    x = exact(x)
    if x < 0:
        raise NotASquareError(f"{fmt(x)} is negative")
    num, den = gmpy2.mpz(x.numerator), gmpy2.mpz(x.denominator)
    if not (gmpy2.is_square(num) and gmpy2.is_square(den)):
        raise NotASquareError(f"{fmt(x)} is not the square of a rational")
    return mpq(gmpy2.isqrt(num), gmpy2.isqrt(den))


def power(x, k: int):
    """``x**k`` with the convention ``0**0 == 1`` (used for t-powers at t = 0)."""
    if k == 0:
        return ONE
    return x**k


def qpoch_finite(x, q, m: int):
    """Finite q-Pochhammer symbol prod_{l=0}^{m-1} (1 - x q^l).

    Exact when ``x`` and ``q`` are exact; the empty product (m = 0) is 1.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    out = ONE if isinstance(x, mpq) or isinstance(q, mpq) else 1.0
    xq = x
    for _ in range(m):
        out = out * (1 - xq)
        xq = xq * q
    return out


def truncation_index(absx: float, q: float, tol: float = DEFAULT_TOL) -> int:
    """Smallest M with |x| q^M < tol."""
    if absx < tol:
        return 0
    return max(0, math.ceil(math.log(tol / absx) / math.log(q)))


def qpoch_infinite(x, q, tol: float = DEFAULT_TOL):
    """Truncated infinite product prod_{l>=0} (1 - x q^l) for scalar or array ``x``.

    The product stops at the first M with max|x| q^M < tol.
    """
    q = float(q)
    if not 0.0 < q < 1.0:
        raise ValueError(f"q must lie in (0, 1), got {q}")
    xa = np.asarray(x, dtype=complex)
    amax = float(np.max(np.abs(xa))) if xa.size else 0.0
    M = truncation_index(amax, q, tol)
    out = np.ones_like(xa)
    xq = xa.copy()
    for _ in range(M):
        out *= 1.0 - xq
        xq *= q
    if np.ndim(x) == 0:
        return complex(out)
    return out
