"""The difference Toda chain on the lattice rho_0 + Lambda.

Lattice functions are dicts ``Partition -> scalar``.  Every coefficient is
exact: apart from the diagonal potential u (which needs sqrt(q) and t_0), all
formulas only involve t_0^2, t_0 t_r and t_0 / t_r, which are rational.

At lam_n = 0 some parameter sets (t_0 = sqrt(q), t_0 = 1) put a zero in a
denominator.  There the vanishing factor is cancelled against an identical
numerator factor before evaluating (the cancellation holds identically in the
parameters, so this is the continuous extension).  Any other vanishing
denominator raises :class:`PoleError`.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .exactnum import ONE, ZERO, exact
from .params import ParamSet, ParameterError
from .report import exact_report
from .weyl import InvariantPoly, LaurentPoly, is_partition, multiply, partitions, symmetrize

LatticeFn = dict


class PoleError(ZeroDivisionError):
    """A Toda coefficient hits a genuine pole at the requested lattice point."""


def _div(a, b, what):
    if not b:
        raise PoleError(f"vanishing denominator in {what}")
    return a / b


def _qdiff(q, lam, i, k, shift=0):
    """1 - q^(lam_i - lam_k + shift) with lam_0 = +inf, lam_{n+1} = -inf (1-based)."""
    n = len(lam)
    if i == 0 or k == n + 1:
        return ONE
    return 1 - q ** (lam[i - 1] - lam[k - 1] + shift)


def w_plus(m: int, params: ParamSet):
    """w_+(log_q t_0 + m) = prod_r (1 - t_0 t_r q^m) / ((1 - t_0^2 q^2m)(1 - t_0^2 q^(2m+1)))."""
    q, t0sq = params.q, params.t0_sq
    num = [1 - params.t0_tr(r) * q**m for r in range(4)]
    den = [1 - t0sq * q ** (2 * m), 1 - t0sq * q ** (2 * m + 1)]
    if m == 0:
        # the r = 0 numerator factor equals the first denominator factor identically
        num, den = num[1:], den[1:]
    val = ONE
    for x in num:
        val *= x
    for x in den:
        val = _div(val, x, f"w_+ at lam_n = {m}")
    return val


def w_minus(m: int, params: ParamSet):
    """w_-(log_q t_0 + m) = prod_r (1 - t_0 t_r^-1 q^m) / ((1 - t_0^2 q^2m)(1 - t_0^2 q^(2m-1)))."""
    q, t0sq = params.q, params.t0_sq
    num = [1 - params.t0_over_tr(r) * q**m for r in range(4)]
    if m == 0:
        # factor r = 0 is (1 - t_0/t_0) = 0 for every parameter value
        if num[0] != 0:
            raise AssertionError("w_- must vanish at lam_n = 0")
        return ZERO
    val = ONE
    for x in num:
        val *= x
    for x in (1 - t0sq * q ** (2 * m), 1 - t0sq * q ** (2 * m - 1)):
        val = _div(val, x, f"w_- at lam_n = {m}")
    return val


def c_eps(eps: int, params: ParamSet, drop_r0: bool = False):
    """c_eps = prod_r (1 - eps q^-1/2 t_r) / (2 sqrt(q^-1 t_0 t_1 t_2 t_3)); the root is that_0."""
    s = params.sqrt_q
    t = params.toda_t
    val = 1 / (2 * params.that[0])
    for r in range(4):
        if drop_r0 and r == 0:
            continue
        val *= 1 - eps * t[r] / s
    return val


def potential_u(lam, params: ParamSet):
    """Diagonal term u(lam) of the lattice Hamiltonian."""
    n = params.n
    q, s, t0 = params.q, params.sqrt_q, params.t0
    ln = lam[-1]
    out = ZERO
    for eps in (1, -1):
        top = ONE if n == 1 else 1 - eps * t0 * q ** lam[-2] * s
        d2 = 1 - eps * q**-ln / (t0 * s)
        if ln == 0:
            # (1 - eps t_0 q^-1/2) appears in c_eps and in the first denominator
            term = c_eps(eps, params, drop_r0=True) * top
            out += _div(term, d2, "u(lam)")
        else:
            d1 = 1 - eps * t0 * q**ln / s
            out += _div(c_eps(eps, params) * top, d1 * d2, "u(lam)")
    return out


@dataclass
class TodaStencil:
    lam: tuple
    v_plus: tuple
    v_minus: tuple
    u: object

    def moves(self):
        n = len(self.lam)
        for j in range(n):
            for sign, coef in ((1, self.v_plus[j]), (-1, self.v_minus[j])):
                tgt = tuple(x + sign * (i == j) for i, x in enumerate(self.lam))
                if is_partition(tgt):
                    yield tgt, coef
        yield self.lam, self.u


def v_plus(lam, j: int, params: ParamSet):
    """Coefficient of f(lam + e_j), j 1-based; zero when lam + e_j leaves Lambda."""
    n = params.n
    val = _qdiff(params.q, lam, j - 1, j)
    if j == n:
        val *= w_plus(lam[-1], params)
    return val


def v_minus(lam, j: int, params: ParamSet):
    n, q = params.n, params.q
    val = _qdiff(q, lam, j, j + 1)
    if n >= 2 and j in (n - 1, n):
        val *= 1 - params.t0_sq * q ** (lam[-2] + lam[-1])
    if j == n:
        val *= w_minus(lam[-1], params)
    return val


def toda_stencil(lam, params: ParamSet) -> TodaStencil:
    if params.mode not in ("t-zero", "extended-boundary"):
        raise ParameterError(f"the Toda stencil needs t-zero mode, not {params.mode}")
    lam = tuple(lam)
    n = params.n
    vp = tuple(v_plus(lam, j, params) for j in range(1, n + 1))
    vm = tuple(v_minus(lam, j, params) for j in range(1, n + 1))
    for j in range(n):
        if not is_partition(tuple(x + (i == j) for i, x in enumerate(lam))) and vp[j]:
            raise AssertionError(f"v_{j + 1}^+ does not vanish at the boundary of Lambda ({lam})")
        if not is_partition(tuple(x - (i == j) for i, x in enumerate(lam))) and vm[j]:
            raise AssertionError(f"v_{j + 1}^- does not vanish at the boundary of Lambda ({lam})")
    return TodaStencil(lam, vp, vm, potential_u(lam, params))


# H_Q ----------------------------------------------------------------------------

def _v_JJ(lam, Jp, Jm, params):
    n, q, t0sq = params.n, params.q, params.t0_sq
    val = ONE
    for j in Jp:
        if j - 1 not in Jp:
            val *= _qdiff(q, lam, j - 1, j)
    for j in Jm:
        if j + 1 not in Jm:
            val *= _qdiff(q, lam, j, j + 1, -(1 if (j + 1) in Jp else 0))
    if n >= 2:
        s = lam[-2] + lam[-1]
        free_p = (n - 1) not in Jp and n not in Jp
        free_pm = free_p and (n - 1) not in Jm and n not in Jm
        if free_p and not free_pm:
            val *= 1 - t0sq * q**s
        if (n - 1) in Jm and n in Jm:
            val *= 1 - t0sq * q ** (s - 1)
    if n in Jp:
        val *= w_plus(lam[-1], params)
    if n in Jm:
        val *= w_minus(lam[-1], params)
    return val


def _u_KK(lam, Kp, Km, params):
    n, q, t0sq = params.n, params.q, params.t0_sq
    val = (-params.that[0]) ** (len(Km) - len(Kp))
    for k in Kp:
        if k - 1 in Km:
            val *= _qdiff(q, lam, k - 1, k)
        if k + 1 in Km:
            val *= _qdiff(q, lam, k, k + 1, 1)
    if n >= 2:
        s = lam[-2] + lam[-1]
        if (n - 1) in Kp and n in Kp:
            val *= 1 - t0sq * q ** (s + 1)
        if (n - 1) in Km and n in Km:
            val *= 1 - t0sq * q**s
    if n in Kp:
        val *= w_plus(lam[-1], params)
    if n in Km:
        val *= w_minus(lam[-1], params)
    return val


def hq_stencil(lam, params: ParamSet) -> dict:
    """Map target partition -> coefficient of f(target) in (H_Q f)(lam)."""
    lam = tuple(lam)
    n = params.n
    out = {}
    for labels in itertools.product(range(4), repeat=n):
        Jp = {j + 1 for j in range(n) if labels[j] == 0}
        Jm = {j + 1 for j in range(n) if labels[j] == 1}
        Kp = {j + 1 for j in range(n) if labels[j] == 2}
        Km = {j + 1 for j in range(n) if labels[j] == 3}
        tgt = tuple(x + (i + 1 in Jp) - (i + 1 in Jm) for i, x in enumerate(lam))
        if not is_partition(tgt):
            continue
        c = _v_JJ(lam, Jp, Jm, params) * _u_KK(lam, Kp, Km, params)
        if c:
            out[tgt] = out.get(tgt, ZERO) + c
    return {k: v for k, v in out.items() if v}


def h_stencil(lam, params: ParamSet) -> dict:
    out = {}
    for tgt, c in toda_stencil(lam, params).moves():
        if c:
            out[tgt] = out.get(tgt, ZERO) + c
    return out


def _apply(stencil_fn, f: LatticeFn, params, domain):
    out = {}
    for lam in domain:
        s = ZERO
        for tgt, c in stencil_fn(lam, params).items():
            v = f.get(tgt)
            if v:
                s += c * v
        if s:
            out[lam] = s
    return out


def _domain(f, params, reach):
    n = params.n
    top = max((sum(l) for l in f), default=0) + reach
    return partitions(n, top)


def apply_H(f: LatticeFn, params: ParamSet) -> LatticeFn:
    return _apply(h_stencil, f, params, _domain(f, params, 1))


def apply_HQ(f: LatticeFn, params: ParamSet) -> LatticeFn:
    return _apply(hq_stencil, f, params, _domain(f, params, params.n))


# reduced chain (that_0 = 0) -----------------------------------------------------

def reduced_stencil(lam, params: ParamSet) -> TodaStencil:
    if params.mode != "that0-zero":
        raise ParameterError("the reduced chain needs that0-zero mode")
    lam = tuple(lam)
    n, q, th = params.n, params.q, params.that
    vp = tuple(_qdiff(q, lam, j - 1, j) for j in range(1, n + 1))
    vm = []
    ln = lam[-1]
    for j in range(1, n + 1):
        v = _qdiff(q, lam, j, j + 1)
        if j == n:
            v *= 1 - q**ln
            for r, s in itertools.combinations((1, 2, 3), 2):
                v *= 1 - th[r] * th[s] * q ** (ln - 1)
        vm.append(v)
    e1 = th[1] + th[2] + th[3]
    e3 = th[1] * th[2] * th[3]
    above = ZERO if n == 1 else q ** (lam[-2] - ln)
    u = e1 * q**ln + e3 * q ** (2 * ln) * (above + q ** (-ln - 1) - 1 - 1 / q)
    return TodaStencil(lam, vp, tuple(vm), u)


def reduced_h_stencil(lam, params):
    out = {}
    for tgt, c in reduced_stencil(lam, params).moves():
        if c:
            out[tgt] = out.get(tgt, ZERO) + c
    return out


def apply_H_reduced(f: LatticeFn, params: ParamSet) -> LatticeFn:
    return _apply(reduced_h_stencil, f, params, _domain(f, params, 1))


# verification ---------------------------------------------------------------------

def _omega_poly(n):
    return InvariantPoly.monomial((1,) + (0,) * (n - 1))


def q_hat_poly(params: ParamSet) -> InvariantPoly:
    """prod_j (2 cos xi_j - that_0 - 1/that_0) in the orbit-sum basis."""
    n = params.n
    s = params.that[0] + 1 / params.that[0]
    f = LaurentPoly(n, {(0,) * n: ONE})
    for j in range(n):
        e = [0] * n
        e[j] = 1
        g = LaurentPoly(n, {tuple(e): ONE, tuple(-x for x in e): ONE, (0,) * n: -s})
        f = f * g
    return symmetrize(f)


def _stencil_residual(lam, stencil: dict, eig: InvariantPoly, wave):
    lhs = InvariantPoly(len(lam))
    for tgt, c in stencil.items():
        lhs = lhs + wave(tgt).scale(c)
    return lhs - multiply(eig, wave(lam))


def verify_toda_eigen(max_size: int, params: ParamSet, table=None, operator: str = "H"):
    """H psi = E psi (operator="H") or H_Q psi = Q psi (operator="HQ") as polynomial identities."""
    from .whittaker import WhittakerTable

    table = table or WhittakerTable(params)
    n = params.n
    if operator == "H":
        stencil_fn, eig = h_stencil, _omega_poly(n)
    elif operator == "HQ":
        stencil_fn, eig = hq_stencil, q_hat_poly(params)
    else:
        raise ValueError(f"unknown operator {operator!r}")
    failures, count = [], 0
    for lam in partitions(n, max_size):
        res = _stencil_residual(lam, stencil_fn(lam, params), eig, table.wave)
        count += 1
        if res:
            failures.append((lam, res))
    return exact_report(f"toda-eigen-{operator}", failures, params, checked=count)


def verify_reduced_eigen(max_size: int, params: ParamSet, table=None):
    from .whittaker import WhittakerTable

    table = table or WhittakerTable(params)
    n = params.n
    failures, count = [], 0
    for lam in partitions(n, max_size):
        res = _stencil_residual(lam, reduced_h_stencil(lam, params), _omega_poly(n), table.poly)
        count += 1
        if res:
            failures.append((lam, res))
    return exact_report("reduced-eigen", failures, params, checked=count)


def verify_selfadjoint(max_size: int, params: ParamSet, operator: str = "H"):
    """Detailed balance Delta_lam C(lam -> mu) = Delta_mu C(mu -> lam) on |lam| <= max_size."""
    from .whittaker import lattice_norm

    if params.mode == "that0-zero":
        stencil_fn = reduced_h_stencil
    else:
        stencil_fn = {"H": h_stencil, "HQ": hq_stencil}[operator]
    failures, count = [], 0
    cache = {}

    def st(lam):
        if lam not in cache:
            cache[lam] = stencil_fn(lam, params)
        return cache[lam]

    for lam in partitions(params.n, max_size):
        for mu, c in st(lam).items():
            if mu == lam:
                continue
            back = st(mu).get(lam, ZERO)
            lhs = lattice_norm(lam, params) * c
            rhs = lattice_norm(mu, params) * back
            count += 1
            if lhs != rhs:
                failures.append(((lam, mu), lhs - rhs))
        # moves that leave the cone must carry zero weight (checked by the stencil itself)
    return exact_report(f"selfadjoint-{operator}", failures, params, checked=count)


def detailed_balance_plus(max_size: int, params: ParamSet):
    """The literal identities Delta_lam v_j^+(lam) = Delta_{lam+e_j} v_j^-(lam+e_j)."""
    from .whittaker import lattice_norm

    reduced = params.mode == "that0-zero"
    st = reduced_stencil if reduced else toda_stencil
    failures, count = [], 0
    for lam in partitions(params.n, max_size):
        s = st(lam, params)
        for j in range(params.n):
            up = tuple(x + (i == j) for i, x in enumerate(lam))
            if not is_partition(up):
                continue
            lhs = lattice_norm(lam, params) * s.v_plus[j]
            rhs = lattice_norm(up, params) * st(up, params).v_minus[j]
            count += 1
            if lhs != rhs:
                failures.append(((lam, j + 1), lhs - rhs))
    return exact_report("detailed-balance", failures, params, checked=count)


def _matrix(stencil_fn, box, params):
    return {lam: stencil_fn(lam, params) for lam in box}


def verify_commutativity(box_size: int, interior_size: int, params: ParamSet):
    """[H, H_Q] f = 0 exactly for f supported on |lam| <= interior_size inside the box."""
    n = params.n
    if interior_size + 1 + n > box_size:
        raise ValueError("the box must contain the two-step stencils of the interior")
    box = partitions(n, box_size)
    H = _matrix(h_stencil, box, params)
    Q = _matrix(hq_stencil, box, params)

    def act(M, f):
        out = {}
        for lam in box:
            s = ZERO
            for tgt, c in M[lam].items():
                v = f.get(tgt)
                if v:
                    s += c * v
            if s:
                out[lam] = s
        return out

    failures, count = [], 0
    for mu in partitions(n, interior_size):
        f = {mu: ONE}
        a, b = act(H, act(Q, f)), act(Q, act(H, f))
        count += 1
        for lam in set(a) | set(b):
            d = a.get(lam, ZERO) - b.get(lam, ZERO)
            if d:
                failures.append(((mu, lam), d))
                break
    return exact_report("commutativity", failures, params, checked=count)


# rational identity -------------------------------------------------------------

def _rational_identity_sides(z, params: ParamSet):
    n, q, t = params.n, params.q, params.t
    s = params.sqrt_q
    tr = params.toda_t
    th1 = params.tau_hat(1)

    def wp(x):
        num = ONE
        for r in range(4):
            num *= 1 - tr[r] * x
        return num / ((1 - x * x) * (1 - q * x * x))

    def wm(x):
        num = ONE
        for r in range(4):
            num *= 1 - x / tr[r]
        return num / ((1 - x * x) * (1 - x * x / q))

    lhs = ZERO
    for j in range(n):
        pp, pm = ONE, ONE
        for k in range(n):
            if k == j:
                continue
            a, b = z[j] * z[k], z[j] / z[k]
            pp *= (1 - t * a) / (1 - a) * (1 - t * b) / (1 - b)
            pm *= (1 - a / t) / (1 - a) * (1 - b / t) / (1 - b)
        lhs += 1 / params.tau_hat(j + 1) - wp(z[j]) * pp / th1
        lhs += params.tau_hat(j + 1) - th1 * wm(z[j]) * pm
    C = -t / (2 * params.that[0] * (1 - t) * (1 - t / q))
    rhs = ZERO
    for eps in (1, -1):
        pre = ONE
        for r in range(4):
            pre *= 1 - eps * tr[r] / s
        prod = ONE
        for x in z:
            prod *= (1 - eps * t * x / s) / (1 - eps * x / s) * (1 - eps * s * x / t) / (1 - eps * s * x)
        rhs += pre * (1 - prod)
    return lhs, C * rhs


def verify_rational_identity(params: ParamSet, trials: int = 100, seed: int = 0):
    """Exact equality of both sides of the rational identity at random rational points."""
    if params.mode != "generic-t":
        raise ParameterError("the rational identity needs generic t")
    rng = random.Random(seed)
    failures, done, retries = [], 0, 0
    while done < trials:
        z = tuple(exact(rng.randint(1, 97)) / rng.randint(2, 101) * rng.choice((1, -1))
                  for _ in range(params.n))
        try:
            lhs, rhs = _rational_identity_sides(z, params)
        except ZeroDivisionError:
            retries += 1
            if retries > 10 * trials:
                raise
            continue
        done += 1
        if lhs != rhs:
            failures.append((z, lhs - rhs))
    return exact_report("rational-identity", failures, params, checked=done,
                        notes=[f"resampled {retries} points at poles"] if retries else None)


def pieri_deficit(lam, params: ParamSet):
    """sum_j (tau_j^ + 1/tau_j^) - sum V_j^+ - sum V_j^- over moves inside Lambda (generic t)."""
    from .koornwinder import pieri_V

    n = params.n
    out = ZERO
    for j in range(1, n + 1):
        out += params.tau_hat(j) + 1 / params.tau_hat(j)
        for sign in (1, -1):
            mu = tuple(x + sign * (i == j - 1) for i, x in enumerate(lam))
            if is_partition(mu):
                out -= pieri_V(lam, j, sign, params)
    return out


__all__ = [
    "LatticeFn", "PoleError", "TodaStencil", "toda_stencil", "w_plus", "w_minus", "c_eps",
    "potential_u", "v_plus", "v_minus", "hq_stencil", "h_stencil", "apply_H", "apply_HQ",
    "reduced_stencil", "apply_H_reduced", "q_hat_poly", "verify_toda_eigen", "verify_reduced_eigen",
    "verify_selfadjoint", "detailed_balance_plus", "verify_commutativity",
    "verify_rational_identity", "pieri_deficit",
]
