"""Exact action of rational q-difference operators on invariant polynomials.

An operator is a list of :class:`Term` objects, each of the form

    coef * prod(1 - c z^a for (c, a) in num) / prod(1 - c z^a for (c, a) in den)
         * sum(w * p(q^s z) for (w, s) in shifts)

where ``q^s z`` means z_j -> q^{s_j} z_j.  Individual terms are rational
functions; only their sum is a Laurent polynomial.

Strategy.  Every binomial is rewritten as a monomial times (1 - c' z^a') with
<a', rho> < 0, so each term has a Laurent series expansion whose support runs
downward in the height <beta, rho>.  Multiplying and dividing by such
binomials only moves mass downward, so all arithmetic can be truncated at
height >= 0 without losing anything above the cut.  Every partition has
height >= 0, hence the truncated sum determines the result in the m_lam basis
exactly.  Two independent exact checks guard the result:

* W-consistency: every computed coefficient above the cut equals the
  coefficient of its dominant representative;
* point identity: the recovered polynomial and the sum of the rational terms
  agree exactly at random rational points (raises otherwise).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .exactnum import ONE, ZERO, exact
from .weyl import InvariantPoly, dominant, expand, is_partition, orbit


class OperatorRemainderError(ArithmeticError):
    """The operator image is not a W-invariant Laurent polynomial."""


@dataclass(frozen=True)
class Term:
    coef: object
    num: tuple
    den: tuple
    shifts: tuple

    def value_at(self, z, q, pvalue):
        """Exact value at the point ``z``; ``pvalue(zs)`` evaluates the operand."""
        val = self.coef
        for c, a in self.num:
            val = val * (1 - c * _mono(z, a))
        for c, a in self.den:
            d = 1 - c * _mono(z, a)
            if not d:
                return None
            val = val / d
        acc = ZERO
        for w, s in self.shifts:
            zs = tuple(zj * q**sj for zj, sj in zip(z, s))
            acc = acc + w * pvalue(zs)
        return val * acc


def _mono(z, a):
    out = ONE
    for zj, aj in zip(z, a):
        if aj:
            out = out * zj**aj
    return out


@lru_cache(maxsize=None)
def _rho(n):
    return tuple(range(n, 0, -1))


def _height(beta, rho):
    h = 0
    for b, r in zip(beta, rho):
        h += b * r
    return h


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _neg(a):
    return tuple(-x for x in a)


def _normalize(term: Term, n: int):
    """Monomial-unit extraction so every binomial has negative height."""
    rho = _rho(n)
    scalar = exact(term.coef)
    gamma = (0,) * n
    nums, dens = [], []
    for c, a in term.num:
        if not c:
            continue
        h = _height(a, rho)
        if h == 0:
            raise ValueError(f"binomial direction {a} is not rho-generic")
        if h < 0:
            nums.append((c, a))
        else:
            scalar *= -c
            gamma = _add(gamma, a)
            nums.append((1 / c, _neg(a)))
    for c, a in term.den:
        if not c:
            continue
        h = _height(a, rho)
        if h == 0:
            raise ValueError(f"binomial direction {a} is not rho-generic")
        if h < 0:
            dens.append((c, a))
        else:
            scalar /= -c
            gamma = _add(gamma, _neg(a))
            dens.append((1 / c, _neg(a)))
    # cancel identical binomials
    for f in list(nums):
        if f in dens:
            dens.remove(f)
            nums.remove(f)
    return scalar, gamma, nums, dens


def _mul_binomial(g, c, a, rho, cut):
    ha = _height(a, rho)
    out = dict(g)
    for beta, v in g.items():
        b = _add(beta, a)
        if _height(b, rho) >= cut:
            s = out.get(b, ZERO) - c * v
            if s:
                out[b] = s
            else:
                out.pop(b, None)
    del ha
    return out


def _div_binomial(g, c, a, rho, cut):
    """Series division by (1 - c z^a), height(a) < 0, truncated at ``cut``."""
    ha = _height(a, rho)
    pts = {}
    for beta in g:
        b, h = beta, _height(beta, rho)
        while h >= cut and b not in pts:
            pts[b] = h
            b = _add(b, a)
            h += ha
    out = {}
    for b in sorted(pts, key=pts.__getitem__, reverse=True):
        v = g.get(b, ZERO)
        prev = out.get(tuple(x - y for x, y in zip(b, a)))
        if prev is not None:
            v = v + c * prev
        if v:
            out[b] = v
    return out


def _term_series(term: Term, pexp: dict, n: int, q, cut: int):
    rho = _rho(n)
    scalar, gamma, nums, dens = _normalize(term, n)
    g = {}
    qpow = {}
    for w, s in term.shifts:
        w = exact(w) * scalar
        for beta, c in pexp.items():
            key = _add(beta, gamma)
            if _height(key, rho) < cut:
                continue
            e = _height(beta, s) if any(s) else 0
            if e not in qpow:
                qpow[e] = q**e
            v = g.get(key, ZERO) + w * c * qpow[e]
            if v:
                g[key] = v
            else:
                g.pop(key, None)
    for c, a in nums:
        g = _mul_binomial(g, c, a, rho, cut)
    for c, a in dens:
        g = _div_binomial(g, c, a, rho, cut)
    return g


def _random_point(n, rng, terms):
    while True:
        z = tuple(exact(rng.randint(2, 40)) / rng.randint(3, 41) * rng.choice((1, -1)) for _ in range(n))
        if len(set(abs(x) for x in z)) < n:
            continue
        ok = True
        for term in terms:
            for c, a in term.den:
                if not (1 - c * _mono(z, a)):
                    ok = False
        if ok:
            return z


def apply_operator(terms, p: InvariantPoly, q, *, check_points: int = 2, seed: int = 0) -> InvariantPoly:
    """Apply the operator given by ``terms`` to ``p`` exactly.

    Raises :class:`OperatorRemainderError` if the image is not a W-invariant
    Laurent polynomial (detected by W-consistency or by the point identity).
    """
    n = p.n
    q = exact(q)
    if not p:
        return InvariantPoly(n)
    pexp = expand(p).coeffs
    rho = _rho(n)
    cut = 0
    acc = {}
    for term in terms:
        for key, v in _term_series(term, pexp, n, q, cut).items():
            s = acc.get(key, ZERO) + v
            if s:
                acc[key] = s
            else:
                acc.pop(key, None)

    result = {beta: c for beta, c in acc.items() if is_partition(beta)}
    for beta, c in acc.items():
        if result.get(dominant(beta), ZERO) != c:
            raise OperatorRemainderError(
                f"coefficient at {beta} differs from its dominant representative {dominant(beta)}")
    for lam, c in result.items():
        for beta in orbit(lam):
            if _height(beta, rho) >= cut and acc.get(beta, ZERO) != c:
                raise OperatorRemainderError(f"orbit of {lam} is not constant above the cut")
    out = InvariantPoly._raw(n, result)

    if check_points:
        rng = random.Random(seed)
        lhs_poly = expand(out)
        pl = expand(p)
        for _ in range(check_points):
            z = _random_point(n, rng, terms)
            total = ZERO
            for term in terms:
                total = total + term.value_at(z, q, pl.evaluate)
            if total != lhs_poly.evaluate(z):
                raise OperatorRemainderError(
                    "truncated expansion does not reproduce the operator at a random point; "
                    "the image is not a Laurent polynomial")
    return out


class DiagonalCollisionError(ArithmeticError):
    """Two diagonal entries of a triangular operator coincide on a down-set."""


def triangular_eigenvector(lam, basis, images, diag_value):
    """Monic eigenvector m_lam + sum_{mu < lam} c_mu m_mu of a triangular operator.

    ``basis`` is the down-set of ``lam`` in a linear extension of dominance,
    ``images[mu]`` the operator image of m_mu and ``diag_value(mu)`` the
    expected diagonal entry, which is checked against the computed one.
    """
    n = len(lam)
    pos = {mu: i for i, mu in enumerate(basis)}
    for mu in basis:
        img = images[mu]
        if img[mu] != diag_value(mu):
            raise OperatorRemainderError(f"diagonal entry at {mu} disagrees with the predicted eigenvalue")
        for nu in img.coeffs:
            if nu not in pos or pos[nu] > pos[mu]:
                raise OperatorRemainderError(f"image of m{list(mu)} leaves the dominance down-set at {nu}")
    d = diag_value(lam)
    coef = {lam: ONE}
    for nu in reversed(basis[: pos[lam]]):
        dn = diag_value(nu)
        if dn == d:
            raise DiagonalCollisionError(f"equal diagonal entries at {lam} and {nu}")
        s = ZERO
        for mu, c in coef.items():
            a = images[mu][nu]
            if a:
                s += c * a
        if s:
            coef[nu] = s / (d - dn)
    return InvariantPoly._raw(n, coef)
