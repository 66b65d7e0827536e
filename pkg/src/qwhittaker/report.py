"""Verification reports and their JSON form."""
from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field

from .exactnum import fmt

SCHEMA_VERSION = 1


@dataclass
class VerificationReport:
    name: str
    status: str  # "pass" | "fail"
    residual: object = "0"  # "0" for exact zero, an exact string, or a float
    tolerance: object = "exact"
    seconds: float | None = None
    params: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self, timing: bool = False) -> dict:
        d = asdict(self)
        if not timing:
            d["seconds"] = None
        elif d["seconds"] is not None:
            d["seconds"] = round(d["seconds"], 3)
        return d


def exact_report(name, failures, params=None, notes=None, checked=None) -> VerificationReport:
    """Report for exact identities: ``failures`` lists (label, residual) pairs."""
    notes = list(notes or [])
    if checked is not None:
        notes.insert(0, f"checked {checked} identities")
    for label, res in failures[:10]:
        notes.append(f"nonzero residual at {label}: {res}")
    residual = "0" if not failures else _residual_str(failures[0][1])
    return VerificationReport(name, "pass" if not failures else "fail", residual, "exact",
                              params=params.to_json() if params is not None else {}, notes=notes)


def numeric_report(name, worst: float, tol: float, params=None, notes=None) -> VerificationReport:
    ok = worst <= tol
    return VerificationReport(name, "pass" if ok else "fail", float(worst), tol,
                              params=params.to_json() if params is not None else {}, notes=list(notes or []))


def _residual_str(res):
    try:
        return fmt(res)
    except TypeError:
        return str(res)


@contextmanager
def timed(report_holder: list):
    """Fill ``seconds`` on every report appended inside the block."""
    start = time.perf_counter()
    n0 = len(report_holder)
    yield
    elapsed = time.perf_counter() - start
    for rep in report_holder[n0:]:
        if rep.seconds is None:
            rep.seconds = elapsed


def dump_reports(reports, params=None, timing: bool = False) -> str:
    payload = {
        "version": SCHEMA_VERSION,
        "params": params.to_json() if params is not None else {},
        "checks": [r.to_json(timing) for r in reports],
    }
    return json.dumps(payload, indent=2, sort_keys=True)
