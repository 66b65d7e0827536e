"""Parameter sets (q, t, that_0..that_3) and their derived symbols."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property

from .exactnum import ONE, ZERO, NotASquareError, exact, exact_sqrt, fmt, power

MODES = ("generic-t", "t-zero", "that0-zero", "extended-boundary")


class ParameterError(ValueError):
    """A parameter constraint is violated; the message names the constraint."""


@dataclass(frozen=True)
class ParamSet:
    n: int
    q: object
    t: object
    that: tuple
    mode: str = "generic-t"
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "q", exact(self.q))
        object.__setattr__(self, "t", exact(self.t))
        object.__setattr__(self, "that", tuple(exact(x) for x in self.that))
        self.validate()

    def validate(self):
        q, t, th = self.q, self.t, self.that
        if self.mode not in MODES:
            raise ParameterError(f"unknown mode {self.mode!r}; expected one of {MODES}")
        if not isinstance(self.n, int) or self.n < 1:
            raise ParameterError("rank n must be a positive integer")
        if len(th) != 4:
            raise ParameterError("exactly four boundary parameters that_0..that_3 are required")
        if not 0 < q < 1:
            raise ParameterError("q must lie in (0, 1) [parameter domain]")
        if self.mode == "generic-t":
            if not (-1 < t < 1) or t == 0:
                raise ParameterError("generic-t mode needs t in (-1, 1) \\ {0}")
        elif t != 0:
            raise ParameterError(f"{self.mode} mode needs t = 0")

        if self.mode == "that0-zero":
            if th[0] != 0:
                raise ParameterError("that0-zero mode needs that_0 = 0")
            for r in (1, 2, 3):
                if not -1 <= th[r] <= 1:
                    raise ParameterError(f"that_{r} must lie in [-1, 1]")
            return

        closed = self.mode == "extended-boundary"
        for r, x in enumerate(th):
            ok = (-1 <= x <= 1) if closed else (-1 < x < 1)
            if not ok or x == 0:
                interval = "[-1, 1]" if closed else "(-1, 1)"
                raise ParameterError(f"that_{r} must lie in {interval} \\ {{0}} [parameter domain]")
        if th[0] <= 0:
            raise ParameterError("that_0 > 0 is required [positivity constraint]")
        if self.that_product <= 0:
            raise ParameterError("that_0 that_1 that_2 that_3 > 0 is required [positivity constraint]")

    # derived symbols -------------------------------------------------------

    @cached_property
    def that_product(self):
        a, b, c, d = self.that
        return a * b * c * d

    @cached_property
    def t0_sq(self):
        """t_0^2 = q^-1 that_0 that_1 that_2 that_3 (rational without any root)."""
        return self.that_product / self.q

    @cached_property
    def sqrt_q(self):
        try:
            return exact_sqrt(self.q)
        except NotASquareError as exc:
            raise ParameterError(f"q = {fmt(self.q)} must be a rational square ({exc})") from None

    @cached_property
    def t0(self):
        if self.mode == "that0-zero":
            raise ParameterError("t_0 is not defined when that_0 = 0")
        try:
            return exact_sqrt(self.t0_sq)
        except NotASquareError:
            raise ParameterError(
                f"q^-1 that_0 that_1 that_2 that_3 = {fmt(self.t0_sq)} must be a rational square"
            ) from None

    @cached_property
    def toda_t(self) -> tuple:
        """(t_0, t_1, t_2, t_3) with t_r = that_r that_0 / t_0."""
        t0 = self.t0
        return (t0,) + tuple(self.that[r] * self.that[0] / t0 for r in (1, 2, 3))

    def t0_tr(self, r: int):
        """t_0 t_r, rational even when t_0 is not."""
        return self.t0_sq if r == 0 else self.that[0] * self.that[r]

    def t0_over_tr(self, r: int):
        """t_0 / t_r, rational even when t_0 is not."""
        return ONE if r == 0 else self.t0_sq / (self.that[0] * self.that[r])

    def tau_sq(self, j: int):
        """tau_j^2 for 1-based j, tau_j = t^(n-j) t_0."""
        return power(self.t, 2 * (self.n - j)) * self.t0_sq

    def tau_hat(self, j: int):
        return power(self.t, self.n - j) * self.that[0]

    def tau(self, j: int):
        return power(self.t, self.n - j) * self.t0

    # mode helpers ----------------------------------------------------------

    def at_t(self, t) -> "ParamSet":
        t = exact(t)
        if t == 0:
            mode = "that0-zero" if self.that[0] == 0 else (
                "extended-boundary" if self.mode == "extended-boundary" else "t-zero")
        else:
            mode = "generic-t"
        return replace(self, t=t, mode=mode)

    def at_t_zero(self) -> "ParamSet":
        return self.at_t(0)

    def with_that(self, that, mode: str | None = None) -> "ParamSet":
        that = tuple(exact(x) for x in that)
        if mode is None:
            mode = "that0-zero" if that[0] == 0 else self.mode
        return replace(self, that=that, mode=mode)

    def with_rank(self, n: int) -> "ParamSet":
        return replace(self, n=n)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "q": fmt(self.q),
            "t": fmt(self.t),
            "that": [fmt(x) for x in self.that],
            "mode": self.mode,
        }

    @classmethod
    def from_json(cls, data: dict) -> "ParamSet":
        return cls(n=int(data["n"]), q=exact(data["q"]), t=exact(data["t"]),
                   that=tuple(exact(x) for x in data["that"]), mode=data.get("mode", "generic-t"),
                   name=data.get("name", ""))


_PRESETS = {
    # t0 = sqrt(q) = 1/2 here: the Toda coefficients need the exact cancellations
    # at lam_n = 0 (see toda.w_plus / toda.w_minus / toda.potential_u).
    "P1": dict(n=2, q="1/4", t="1/3", that=("1/2", "1/2", "1/2", "1/2")),
    "P2": dict(n=3, q="1/9", t="1/4", that=("2/3", "1/6", "1/2", "1/2")),
    # t_2 = -t_3 = sqrt(q) (Toda parameters): the additive potential vanishes
    "D": dict(n=2, q="1/4", t="1/3", that=("1/3", "-1/3", "1/2", "-1/2")),
    # endpoint t_0 = -t_1 = 1, t_2 = -t_3 = sqrt(q)
    "DE": dict(n=2, q="1/4", t="0", that=("1", "-1", "1/2", "-1/2"), mode="extended-boundary"),
    "R": dict(n=2, q="1/4", t="0", that=("0", "1/2", "1/3", "1/5"), mode="that0-zero"),
}


def preset_names():
    return sorted(_PRESETS)


def preset(name: str, *, t=None, n: int | None = None) -> ParamSet:
    """Named parameter set; ``t`` overrides the deformation parameter (0 -> t-zero mode)."""
    try:
        cfg = dict(_PRESETS[name])
    except KeyError:
        raise ParameterError(f"unknown preset {name!r}; known: {preset_names()}") from None
    if n is not None:
        cfg["n"] = n
    ps = ParamSet(n=cfg["n"], q=exact(cfg["q"]), t=exact(cfg["t"]),
                  that=tuple(exact(x) for x in cfg["that"]),
                  mode=cfg.get("mode", "generic-t"), name=name)
    if t is not None:
        ps = ps.at_t(t)
    return ps


__all__ = ["ParamSet", "ParameterError", "preset", "preset_names", "MODES", "ZERO"]
