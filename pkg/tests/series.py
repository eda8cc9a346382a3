"""Expand a package RationalFn into the truncated series used by ``oracle``."""

from __future__ import annotations

from fractions import Fraction

from toda_fermion.kernel import q_denominator, symbol_slot
from toda_fermion.kernel.monomial import unpack

from oracle import _mul, weight


def _poly(lp, slots) -> dict:
    """LaurentPoly -> {(q_half, z...): coeff}; q exponents rescaled to halves."""
    scale = 2 // q_denominator() if q_denominator() <= 2 else None
    if scale is None:
        raise ValueError("series expansion assumes q exponents in halves")
    out = {}
    for key, c in lp.data.items():
        ex = unpack(key)
        ex = ex + [0] * (max(slots) + 1 - len(ex))
        used = {0, *slots}
        if any(e for s, e in enumerate(ex) if s not in used):
            raise ValueError("unexpected symbol in expansion")
        out[(ex[0] * scale,) + tuple(ex[s] for s in slots)] = Fraction(c)
    return out


def expand(f, names, top: int) -> dict:
    """Coefficients of f of grading at most ``top`` in the symbols ``names``."""
    slots = [symbol_slot(n) for n in names]
    num = _poly(f.numerator, slots)
    den = _poly(f.denominator, slots)
    low = min(weight(e) for e in den)
    lead = [e for e in den if weight(e) == low]
    if len(lead) != 1:
        raise ValueError("denominator has no unique leading monomial")
    (e0,) = lead
    c0 = den[e0]
    shifted = {tuple(a - b for a, b in zip(e, e0)): c / c0 for e, c in den.items()}
    if any(x < 0 for e in shifted for x in e[1:]):
        raise ValueError("denominator is not a power series in z")
    nvars = len(e0)
    zero = (0,) * nvars
    # 1 / (1 + u) with u of positive grading
    u = {e: c for e, c in shifted.items() if e != zero}
    if any(weight(e) <= 0 for e in u):
        raise ValueError("grading is not positive on the denominator")
    inv = {zero: Fraction(1)}
    power = {zero: Fraction(1)}
    span = top - min(weight(e) for e in num) + low
    for _ in range(span + 1):
        power = _mul(power, {e: -c for e, c in u.items()}, span)
        if not power:
            break
        for e, c in power.items():
            inv[e] = inv.get(e, 0) + c
    out = {}
    for e, c in num.items():
        for e2, c2 in inv.items():
            tot = tuple(a + b - s for a, b, s in zip(e, e2, e0))
            if weight(tot) <= top:
                out[tot] = out.get(tot, 0) + c * c2 / c0
    return {e: c for e, c in out.items() if c}
