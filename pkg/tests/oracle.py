"""Brute-force oracle for semi-infinite fermionic sums, independent of the package.

A sum is expanded as a truncated power series.  Exponent tuples are
(q in half units, z_1, ..., z_l).  The grading is ``q_half + K * deg_z``,
which is positive on every denominator factor of the sums used here.
Run this file to print the frozen tables in ``frozen_values.py``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

K = 4


def weight(exps) -> int:
    return exps[0] + K * sum(exps[1:])


def _mul(a: dict, b: dict, top: int) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        wa = weight(ea)
        for eb, cb in b.items():
            if wa + weight(eb) > top:
                continue
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def _inv_qpoch(step_half: int, n: int, nvars: int, top: int) -> dict:
    """1 / prod_{k=1..n} (1 - q^{k * step}) with step given in half units."""
    out = {(0,) * nvars: Fraction(1)}
    for k in range(1, n + 1):
        geo = {}
        e = 0
        while e <= top:
            geo[(e,) + (0,) * (nvars - 1)] = Fraction(1)
            e += k * step_half
        out = _mul(out, geo, top)
    return out


def semi_series(B, d, m, top: int) -> dict:
    """Sum over configurations on [0, inf) of q^Q z^{sum t} / prod (q_i; q_i)_{m_it}.

    B is the symmetric form, d the q-factorial bases.  Every coefficient of
    grading at most ``top`` is exact.
    """
    l = len(m)
    nvars = l + 1
    per_color = []
    for mi in m:
        per_color.append([c for c in itertools.combinations_with_replacement(range(top + 1), mi)
                          if sum(c) <= top])
    total: dict = {}
    for combo in itertools.product(*per_color):
        zdeg = [sum(c) for c in combo]
        parts = [(i, p) for i, c in enumerate(combo) for p in c]
        Q2 = 0   # 2Q: the exponent of q^(1/2)
        for i, p in parts:
            for j, u in parts:
                Q2 += B[i][j] * min(p, u)
        for i, p in parts:
            Q2 -= B[i][i] * p
        head = (Q2,) + tuple(zdeg)
        if weight(head) > top:
            continue
        term = {head: Fraction(1)}
        counts: dict = {}
        for i, p in parts:
            counts[(i, p)] = counts.get((i, p), 0) + 1
        for (i, _), c in counts.items():
            term = _mul(term, _inv_qpoch(2 * d[i], c, nvars, top - weight(head)), top)
        for e, c in term.items():
            total[e] = total.get(e, 0) + c
    return {e: c for e, c in total.items() if c}


CASES = {
    "A1_m3": (((2,),), (1,), (3,), 12),
    "A2_m11": (((2, -1), (-1, 2)), (1, 1), (1, 1), 12),
    "A2_m21": (((2, -1), (-1, 2)), (1, 1), (2, 1), 12),
    "B2_m11": (((4, -2), (-2, 2)), (2, 1), (1, 1), 12),
    "C2_m12": (((2, -2), (-2, 4)), (1, 2), (1, 2), 12),
}


if __name__ == "__main__":
    for name, (B, d, m, top) in CASES.items():
        ser = semi_series(B, d, m, top)
        print(f"{name} = {{")
        for e in sorted(ser):
            assert ser[e].denominator == 1
            print(f"    {e}: {ser[e].numerator},")
        print("}")
