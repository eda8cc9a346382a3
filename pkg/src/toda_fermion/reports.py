"""Verification reports shared by all checkers."""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from typing import Any

from .kernel import RationalFn, qpow, rational_to_json, rf_equal


@dataclass
class Report:
    identity: str
    params: dict
    holds: bool | None
    lhs: Any = None
    rhs: Any = None
    runtime_ms: float = 0.0
    notes: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        def enc(v):
            if isinstance(v, RationalFn):
                return rational_to_json(v)
            if isinstance(v, (list, tuple)):
                return [enc(x) for x in v]
            return v

        out = {
            "identity": self.identity,
            "params": _plain(self.params),
            "holds": self.holds,
            "lhs": enc(self.lhs),
            "rhs": enc(self.rhs),
            "runtime_ms": round(self.runtime_ms, 3),
        }
        if self.notes:
            out["notes"] = _plain(self.notes)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def line(self) -> str:
        status = {True: "PASS", False: "FAIL", None: "INCONCLUSIVE"}[self.holds]
        return f"{status} {self.identity} {json.dumps(_plain(self.params), sort_keys=True)}"


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(x) for x in obj]
    if isinstance(obj, (int, float, str, bool)) or obj is None:
        return obj
    return str(obj)


def compare(lhs, rhs, mode: str = "exact", seed: int = 0):
    """Exact or probabilistic equality; sequences compare elementwise."""
    if isinstance(lhs, (list, tuple)):
        if len(lhs) != len(rhs):
            return False
        results = [compare(a, b, mode, seed) for a, b in zip(lhs, rhs)]
        if any(r is False for r in results):
            return False
        return None if any(r is None for r in results) else True
    if mode == "exact":
        return rf_equal(lhs, rhs, "exact")
    if mode != "probabilistic":
        raise ValueError(f"unknown equality mode {mode!r}")
    return rf_equal(lhs, rhs, "probabilistic", rng=random.Random(seed), points=5)


def perturb(value):
    """The same value with one coefficient off by a factor q (or q added to zero)."""
    if isinstance(value, (list, tuple)):
        return [perturb(value[0])] + list(value[1:])
    q = RationalFn.monomial(qpow(1))
    return value * q if not value.is_zero() else value + q


def negative_control(report: Report, seed: int = 0) -> dict:
    """Re-run the comparison of a report against a perturbed right side."""
    bad = perturb(report.rhs)
    return {mode: compare(report.lhs, bad, mode, seed) for mode in ("exact", "probabilistic")}


class timed:
    """Context manager measuring wall time in milliseconds."""

    def __enter__(self):
        self.t0 = time.perf_counter()
        self.ms = 0.0
        return self

    def __exit__(self, *exc):
        self.ms = (time.perf_counter() - self.t0) * 1000.0
        return False


def make_report(identity: str, params: dict, lhs, rhs, mode: str = "exact", seed: int = 0,
                t0: float | None = None, **notes) -> Report:
    holds = compare(lhs, rhs, mode, seed)
    ms = 0.0 if t0 is None else (time.perf_counter() - t0) * 1000.0
    return Report(identity, params, holds, lhs, rhs, ms, notes)
