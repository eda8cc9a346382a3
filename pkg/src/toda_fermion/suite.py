"""Named verification tasks and the smoke/full suites built from them."""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable

from . import decompositions, toda, whittaker
from .fermionic import system_for
from .kernel import RationalFn
from .lie import build_cartan, custom_cartan, parse_cartan_type, roots_of_height, roots_up_to_height
from .reports import Report, make_report


def _cartan(spec) -> object:
    if isinstance(spec, str):
        return parse_cartan_type(spec)
    return custom_cartan(spec)


def fermionic_residual(C, m) -> Report:
    t0 = time.perf_counter()
    res = system_for(C).recursion_residual(tuple(m))
    return make_report("fermionic_recursion", {"C": [list(r) for r in C], "m": list(m)},
                       res, RationalFn.zero(), t0=t0)


def J_equals_I(type_spec: str, beta) -> Report:
    t0 = time.perf_counter()
    cartan = parse_cartan_type(type_spec)
    J = whittaker.context_for(cartan).J(tuple(beta))
    I = system_for(cartan.C).semi(tuple(beta))
    return make_report("J_equals_I", {"type": cartan.name, "beta": list(beta)}, J, I, t0=t0)


def _identity(which, type_spec, beta, k=None, mode="exact", seed=0):
    return whittaker.verify_identity(which, _cartan(type_spec), tuple(beta), k=k, mode=mode, seed=seed)


def _toda(type_spec, beta, literal=False, eps_square=None):
    c = parse_cartan_type(type_spec)
    if eps_square is not None:
        c = build_cartan(c.kind, c.rank, eps_square=eps_square)
    return toda.verify_toda_recursion(c.kind, c.rank, tuple(beta), c, literal=literal)


def _eigen(l, D):
    F = toda.build_F(whittaker.context_for(build_cartan("A", l)), D)
    return toda.eigen_check(F, l)


def _vanishing(type_spec, beta, lam1, lam2):
    return whittaker.check_vanishing(_cartan(type_spec), tuple(beta), tuple(lam1), tuple(lam2))


def _sl2_family(n, m):
    t0 = time.perf_counter()
    val = whittaker.sl2_vanishing_family(n, m)
    return make_report("vanishing_sl2", {"n": n, "m": m}, val, RationalFn.zero(), t0=t0)


def _leading(type_spec, beta):
    return whittaker.leading_monomial_check(_cartan(type_spec), tuple(beta))


def _sl2(kind, m, nu="w1"):
    return decompositions.sl2_closed(kind, m, nu)[1]


TASKS = {
    "identity": _identity,
    "decomposition": decompositions.check_decomposition,
    "sl2": _sl2,
    "toda": _toda,
    "eigen": _eigen,
    "appendixA": toda.verify_appendixA,
    "vanishing": _vanishing,
    "vanishing_sl2": _sl2_family,
    "leading": _leading,
    "fermionic_residual": fermionic_residual,
    "J_equals_I": J_equals_I,
}


def run_task(task: tuple) -> dict:
    """Run one (name, kwargs) task; returns the report as JSON-ready data."""
    name, kwargs = task
    try:
        rep = TASKS[name](**kwargs)
        out = rep.to_json()
    except Exception as exc:   # a crash is a failed check, not a crashed suite
        out = {"identity": name, "params": kwargs, "holds": False, "error": f"{type(exc).__name__}: {exc}"}
    out["task"] = name
    return out


A2 = ((2, -1), (-1, 2))


def smoke_tasks() -> list[tuple]:
    t = []
    for kind in decompositions.SL2_KINDS:
        t.append(("sl2", {"kind": kind, "m": 2}))
    t += [
        ("decomposition", {"which": "one_particle_split", "k": 2}),
        ("decomposition", {"which": "two_particle_split", "C": ((2,),), "k": 2}),
        ("decomposition", {"which": "final_display"}),
        ("decomposition", {"which": "quasi_classical", "m": (2,), "r": 0, "s": 1}),
        ("decomposition", {"which": "r_eq_s", "m": (2,)}),
        ("decomposition", {"which": "r_eq_s_plus_1", "m": (2,)}),
        ("decomposition", {"which": "two_groups", "m": (2,), "r": 0, "s": 1}),
        ("decomposition", {"which": "J_JX", "m": (2,)}),
        ("decomposition", {"which": "J_JX_kminus1", "m": (2,)}),
        ("decomposition", {"which": "X_XX", "m": (2,)}),
        ("decomposition", {"which": "two_corner", "m": (2,), "k": 1}),
        ("decomposition", {"which": "relation2", "m": (2,), "k": 1}),
        ("decomposition", {"which": "relation3", "m": (2,), "k": 1}),
        ("decomposition", {"which": "X1", "m": (2,)}),
        ("decomposition", {"which": "X2", "m": (2,)}),
        ("decomposition", {"which": "X_symmetry", "m": (2,)}),
        ("decomposition", {"which": "multi_corner_X", "m": (2,), "ks": (0, 1, 2)}),
        ("decomposition", {"which": "multi_corner_I", "m": (2,), "ks": (0, 1, 2)}),
    ]
    for which in whittaker.IDENTITIES:
        beta = (2,) if which in ("id3", "id4") else (1, 1)
        spec = "A1" if which in ("id3", "id4") else "A2"
        t.append(("identity", {"which": which, "type_spec": spec, "beta": beta,
                               "k": 2 if which == "J0k" else None}))
    t += [
        ("toda", {"type_spec": "A2", "beta": (1, 1)}),
        ("toda", {"type_spec": "B2", "beta": (1, 2)}),
        ("toda", {"type_spec": "C2", "beta": (1, 1)}),
        ("toda", {"type_spec": "D4", "beta": (0, 1, 1, 1)}),
        ("eigen", {"l": 1, "D": 3}),
        ("appendixA", {"l": 1, "D": 2}),
        ("vanishing_sl2", {"n": 2, "m": 3}),
        ("vanishing", {"type_spec": "A2", "beta": (1, 1), "lam1": (1, 1), "lam2": (-3, -3)}),
        ("leading", {"type_spec": "A2", "beta": (1, 1)}),
        ("fermionic_residual", {"C": A2, "m": (1, 1)}),
        ("J_equals_I", {"type_spec": "A2", "beta": (1, 1)}),
    ]
    return t


def full_tasks() -> list[tuple]:
    """The acceptance grid."""
    t = []
    for m in range(1, 7):
        t.append(("sl2", {"kind": "I", "m": m}))
    for m in range(1, 5):
        t.append(("sl2", {"kind": "X0", "m": m}))
    for k in range(4):
        t.append(("decomposition", {"which": "one_particle_split", "k": k}))
        for c in (1, 2, 3):
            t.append(("decomposition", {"which": "two_particle_split", "C": ((c,),), "k": k}))
    t.append(("decomposition", {"which": "final_display"}))
    for C in (((2,),), A2, ((2, -1, 0), (-1, 2, -1), (0, -1, 2)), ((2, -2), (-2, 3))):
        for m in roots_up_to_height(len(C), 5):
            if any(m):
                t.append(("fermionic_residual", {"C": C, "m": m}))
    for spec, l in (("A1", 1), ("A2", 2), ("A3", 3)):
        for beta in roots_up_to_height(l, 4):
            t.append(("J_equals_I", {"type_spec": spec, "beta": beta}))
    for spec, l in (("A1", 1), ("A2", 2)):
        for beta in roots_up_to_height(l, 3):
            for which in ("id1", "id2", "id3", "id4"):
                t.append(("identity", {"which": which, "type_spec": spec, "beta": beta}))
    for spec, l in (("A1", 1), ("A2", 2), ("B2", 2)):
        for beta in roots_up_to_height(l, 4):
            t.append(("identity", {"which": "kminus1", "type_spec": spec, "beta": beta}))
            t.append(("identity", {"which": "Jz0", "type_spec": spec, "beta": beta}))
            t.append(("identity", {"which": "Jqinv", "type_spec": spec, "beta": beta}))
            if spec != "B2":
                t.append(("identity", {"which": "k0", "type_spec": spec, "beta": beta}))
    for b in range(4):
        for k in range(4):
            t.append(("identity", {"which": "J0k", "type_spec": "A1", "beta": (b,), "k": k}))
    for beta in ((0, 0), (1, 0), (0, 1), (1, 1)):
        for k in range(3):
            t.append(("identity", {"which": "J0k", "type_spec": "A2", "beta": beta, "k": k}))
    t += [("eigen", {"l": 1, "D": 5}), ("eigen", {"l": 2, "D": 4})]
    for spec, l in (("A1", 1), ("A2", 2), ("A3", 3), ("B2", 2), ("C2", 2)):
        for beta in roots_up_to_height(l, 4):
            if any(beta):
                t.append(("toda", {"type_spec": spec, "beta": beta}))
    for l in (1, 2):
        t.append(("appendixA", {"l": l, "D": 4}))
    for spec in ("A1", "A2"):
        cartan = parse_cartan_type(spec)
        for beta, lam1, lam2 in whittaker.vanishing_instances(cartan, 3, 1):
            t.append(("vanishing", {"type_spec": spec, "beta": beta, "lam1": lam1, "lam2": lam2}))
    for n in range(3):
        for m in range(n + 1, 5):
            t.append(("vanishing_sl2", {"n": n, "m": m}))
    return t


def num_workers() -> int:
    raw = os.environ.get("TODA_FERMION_NUM_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_tasks(tasks: Iterable[tuple], workers: int | None = None) -> list[dict]:
    tasks = list(tasks)
    workers = num_workers() if workers is None else workers
    if workers <= 1:
        return [run_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_task, tasks, chunksize=4))


def suite(level: str = "smoke", workers: int | None = None) -> dict:
    if level not in ("smoke", "full"):
        raise ValueError(f"unknown suite level {level!r}")
    t0 = time.perf_counter()
    results = run_tasks(smoke_tasks() if level == "smoke" else full_tasks(), workers)
    failed = [r for r in results if r.get("holds") is not True]
    return {
        "level": level,
        "total": len(results),
        "passed": len(results) - len(failed),
        "failed": len(failed),
        "runtime_ms": round((time.perf_counter() - t0) * 1000.0, 3),
        "results": [{"task": r["task"], "identity": r["identity"], "params": r["params"],
                     "holds": r.get("holds"), **({"error": r["error"]} if "error" in r else {})}
                    for r in results],
        "failures": failed,
    }
