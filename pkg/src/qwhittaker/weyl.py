"""Partitions, the hyperoctahedral group and W-invariant Laurent polynomials.

A partition of rank n is a weakly decreasing tuple of n nonnegative ints.
Invariant polynomials are stored in the orbit-sum basis

    m_lam(z) = sum_{beta in W lam} z^beta,

where each distinct exponent vector of the orbit appears once.
"""
from __future__ import annotations

import cmath
import itertools
import json
from functools import lru_cache

from .exactnum import ONE, ZERO, exact, fmt

Partition = tuple


class RankMismatchError(ValueError):
    pass


class NonInvariantError(ValueError):
    """Raised by :func:`symmetrize` with the offending orbit as witness."""

    def __init__(self, msg, witness):
        super().__init__(msg)
        self.witness = witness


def as_partition(parts, n: int | None = None) -> Partition:
    lam = tuple(int(p) for p in parts)
    if n is not None:
        if len(lam) > n:
            raise ValueError(f"{lam} has more than {n} parts")
        lam = lam + (0,) * (n - len(lam))
    if any(p < 0 for p in lam):
        raise ValueError(f"negative part in {lam}")
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise ValueError(f"{lam} is not weakly decreasing")
    return lam


def is_partition(beta) -> bool:
    return all(b >= 0 for b in beta) and all(
        beta[i] >= beta[i + 1] for i in range(len(beta) - 1)
    )


def dominance_leq(mu, lam) -> bool:
    """mu <= lam iff every partial sum of mu is bounded by that of lam."""
    if len(mu) != len(lam):
        raise RankMismatchError(f"ranks differ: {len(mu)} vs {len(lam)}")
    s_mu = s_lam = 0
    for a, b in zip(mu, lam):
        s_mu += a
        s_lam += b
        if s_mu > s_lam:
            return False
    return True


def dominant(beta) -> Partition:
    """The partition in the W-orbit of an integer vector."""
    return tuple(sorted((abs(b) for b in beta), reverse=True))


def rho(n: int) -> tuple:
    return tuple(range(n, 0, -1))


def height(beta) -> int:
    """<beta, rho> with rho = (n, ..., 1); strictly increases along dominance."""
    n = len(beta)
    return sum((n - j) * b for j, b in enumerate(beta))


@lru_cache(maxsize=None)
def partitions_of(k: int, n: int) -> tuple:
    """Partitions of k with at most n parts, padded to length n (lex descending)."""
    out = []

    def rec(rem, maxpart, acc):
        if len(acc) == n:
            if rem == 0:
                out.append(tuple(acc))
            return
        for p in range(min(rem, maxpart), -1, -1):
            rec(rem - p, p, acc + [p])

    rec(k, k, [])
    return tuple(out)


def partitions(n: int, max_size: int) -> list:
    """All rank-n partitions with |lam| <= max_size, in a linear extension of dominance."""
    out = []
    for k in range(max_size + 1):
        out.extend(partitions_of(k, n))
    return linear_extension(out)


def linear_extension(parts) -> list:
    """Sort by (|lam|, lex) ascending; this refines the dominance order.

    The refinement is checked, not assumed.
    """
    order = sorted(set(parts), key=lambda lam: (sum(lam), lam))
    pos = {lam: i for i, lam in enumerate(order)}
    for mu in order:
        for lam in order:
            if mu != lam and dominance_leq(mu, lam) and pos[mu] > pos[lam]:
                raise AssertionError(f"ordering does not refine dominance at {mu} <= {lam}")
    return order


def dominated(lam) -> list:
    """All partitions mu <= lam, in a linear extension."""
    n = len(lam)
    return [mu for mu in partitions(n, sum(lam)) if dominance_leq(mu, lam)]


def neighbours_in_cone(lam, delta) -> Partition | None:
    beta = tuple(a + b for a, b in zip(lam, delta))
    return beta if is_partition(beta) else None


def unit(n: int, j: int, sign: int = 1) -> tuple:
    """sign * e_j for 0-based j."""
    return tuple(sign if i == j else 0 for i in range(n))


@lru_cache(maxsize=None)
def orbit(beta) -> tuple:
    """Distinct elements of the W-orbit of an integer vector."""
    beta = tuple(beta)
    seen = set()
    for perm in set(itertools.permutations(beta)):
        choices = [(b,) if b == 0 else (b, -b) for b in perm]
        seen.update(itertools.product(*choices))
    return tuple(sorted(seen))


def orbit_size(lam) -> int:
    """2^(#nonzero parts) * n! / prod(multiplicities!)."""
    from collections import Counter
    from math import factorial

    size = factorial(len(lam))
    for mult in Counter(lam).values():
        size //= factorial(mult)
    return size * 2 ** sum(1 for p in lam if p)


@lru_cache(maxsize=None)
def signed_permutations(n: int) -> tuple:
    """All w = (sigma, eps) in W with sign(w) = eps_1...eps_n sign(sigma).

    ``w`` acts by (w v)_j = eps_j v_{sigma_j}.
    """
    out = []
    for sigma in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if sigma[i] > sigma[j])
        for eps in itertools.product((1, -1), repeat=n):
            sgn = (-1) ** inv
            for e in eps:
                sgn *= e
            out.append((sigma, eps, sgn))
    return tuple(out)


def act(w, v) -> tuple:
    sigma, eps = w[0], w[1]
    return tuple(eps[j] * v[sigma[j]] for j in range(len(v)))


class LaurentPoly:
    """Sparse Laurent polynomial in z_1..z_n: exponent tuple -> exact scalar."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs=None):
        self.n = n
        self.coeffs = {}
        if coeffs:
            for k, v in coeffs.items():
                if len(k) != n:
                    raise RankMismatchError(f"exponent {k} does not have rank {n}")
                if v:
                    self.coeffs[tuple(k)] = exact(v)

    def __repr__(self):
        return f"LaurentPoly({self.n}, {self.coeffs!r})"

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.n == other.n and self.coeffs == other.coeffs

    def __len__(self):
        return len(self.coeffs)

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = out.get(k, ZERO) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LaurentPoly._raw(self.n, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return self.scale(other)
        out = {}
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                k = tuple(i + j for i, j in zip(a, b))
                out[k] = out.get(k, ZERO) + x * y
        return LaurentPoly._raw(self.n, {k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def scale(self, c):
        c = exact(c)
        if not c:
            return LaurentPoly(self.n)
        return LaurentPoly._raw(self.n, {k: c * v for k, v in self.coeffs.items()})

    @classmethod
    def _raw(cls, n, coeffs):
        obj = cls.__new__(cls)
        obj.n = n
        obj.coeffs = coeffs
        return obj

    def is_invariant(self) -> bool:
        for beta, c in self.coeffs.items():
            for gamma in orbit(dominant(beta)):
                if self.coeffs.get(gamma, ZERO) != c:
                    return False
        return True

    def evaluate(self, z):
        """Evaluate at a point z (exact if z is exact, complex otherwise)."""
        total = 0
        for beta, c in self.coeffs.items():
            term = c
            for zj, b in zip(z, beta):
                term = term * zj**b
            total = total + term
        return total


class InvariantPoly:
    """W-invariant Laurent polynomial as a sparse map partition -> coefficient of m_lam."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs=None):
        self.n = n
        self.coeffs = {}
        if coeffs:
            for lam, v in coeffs.items():
                lam = tuple(lam)
                if len(lam) != n:
                    raise RankMismatchError(f"{lam} does not have rank {n}")
                if not is_partition(lam):
                    raise ValueError(f"{lam} is not a partition")
                if v:
                    self.coeffs[lam] = exact(v)

    @classmethod
    def monomial(cls, lam, c=ONE):
        lam = as_partition(lam)
        return cls._raw(len(lam), {lam: exact(c)} if c else {})

    @classmethod
    def constant(cls, n: int, c=ONE):
        return cls.monomial((0,) * n, c)

    @classmethod
    def _raw(cls, n, coeffs):
        obj = cls.__new__(cls)
        obj.n = n
        obj.coeffs = coeffs
        return obj

    def __repr__(self):
        terms = " + ".join(f"{fmt(c)}*m{list(lam)}" for lam, c in sorted(self.coeffs.items()))
        return f"InvariantPoly({terms or '0'})"

    def __eq__(self, other):
        return isinstance(other, InvariantPoly) and self.n == other.n and self.coeffs == other.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, lam):
        return self.coeffs.get(tuple(lam), ZERO)

    def support(self):
        return set(self.coeffs)

    def __add__(self, other):
        if self.n != other.n:
            raise RankMismatchError("rank mismatch")
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = out.get(k, ZERO) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return InvariantPoly._raw(self.n, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = exact(c)
        if not c:
            return InvariantPoly(self.n)
        return InvariantPoly._raw(self.n, {k: c * v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, InvariantPoly):
            return multiply(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def max_height(self) -> int:
        return max((height(lam) for lam in self.coeffs), default=0)

    def to_json(self) -> dict:
        return {json.dumps(list(lam)): fmt(c) for lam, c in sorted(self.coeffs.items())}

    @classmethod
    def from_json(cls, n: int, data: dict):
        return cls(n, {tuple(json.loads(k)): exact(v) for k, v in data.items()})


def expand(p: InvariantPoly) -> LaurentPoly:
    out = {}
    for lam, c in p.coeffs.items():
        for beta in orbit(lam):
            out[beta] = out.get(beta, ZERO) + c
    return LaurentPoly._raw(p.n, {k: v for k, v in out.items() if v})


def symmetrize(f: LaurentPoly) -> InvariantPoly:
    """Rewrite a W-invariant Laurent polynomial in the m_lam basis."""
    out = {}
    for beta, c in f.coeffs.items():
        lam = dominant(beta)
        if lam in out:
            continue
        for gamma in orbit(lam):
            if f.coeffs.get(gamma, ZERO) != c:
                raise NonInvariantError(
                    f"coefficients differ on the orbit of {lam}: {beta} vs {gamma}",
                    witness=lam,
                )
        out[lam] = c
    return InvariantPoly._raw(f.n, out)


def multiply(a: InvariantPoly, b: InvariantPoly) -> InvariantPoly:
    """Exact product via orbit convolution (only dominant targets are accumulated)."""
    if a.n != b.n:
        raise RankMismatchError("rank mismatch")
    out = {}
    for lam, x in a.coeffs.items():
        for mu, y in b.coeffs.items():
            xy = x * y
            # coefficient of z^nu in m_lam * m_mu, collected for dominant nu only
            for beta in orbit(lam):
                for gamma in orbit(mu):
                    nu = tuple(i + j for i, j in zip(beta, gamma))
                    if is_partition(nu):
                        out[nu] = out.get(nu, ZERO) + xy
    return InvariantPoly._raw(a.n, {k: v for k, v in out.items() if v})


def evaluate_at_exponentials(p: InvariantPoly, z):
    return expand(p).evaluate(z)


def evaluate(p: InvariantPoly, xi) -> complex:
    """Numeric value at z_j = exp(i xi_j)."""
    z = [cmath.exp(1j * x) for x in xi]
    total = 0j
    for lam, c in p.coeffs.items():
        fc = float(c)
        for beta in orbit(lam):
            term = fc
            for zj, b in zip(z, beta):
                term *= zj**b
            total += term
    return total
