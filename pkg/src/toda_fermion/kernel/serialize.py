"""JSON encoding of Laurent polynomials and rational functions."""

from __future__ import annotations

import json
from fractions import Fraction

from .factors import Factor, factor_poly
from .laurent import LaurentPoly
from .monomial import Monomial, q_denominator, unpack
from .rational import RationalFn


def _term(key: int, c) -> dict:
    m = Monomial.from_key(key)
    digits = unpack(key)
    c = Fraction(c)
    return {
        "coeff": f"{c.numerator}/{c.denominator}",
        "q": f"{digits[0] if digits else 0}/{q_denominator()}",
        "syms": dict(sorted(m.symbol_exponents.items())),
    }


def poly_to_json(p: LaurentPoly) -> list:
    return [_term(m.key, c) for m, c in p.sorted_items()]


def poly_from_json(terms: list) -> LaurentPoly:
    acc = {}
    for t in terms:
        m = Monomial(Fraction(t["q"]), {s: int(e) for s, e in t.get("syms", {}).items()})
        acc[m.key] = acc.get(m.key, 0) + Fraction(t["coeff"])
    return LaurentPoly(acc)


def rational_to_json(f: RationalFn) -> dict:
    return {
        "num": poly_to_json(f.num),
        "den": poly_to_json(f.denominator),
        "den_factors": [{"poly": poly_to_json(g.poly), "mult": e} for g, e in f.den],
    }


def rational_from_json(obj: dict) -> RationalFn:
    num = poly_from_json(obj["num"])
    if "den_factors" in obj:
        dd = {}
        for item in obj["den_factors"]:
            p = poly_from_json(item["poly"])
            c, u, fs = factor_poly(p)
            if c != 1 or u:
                raise ValueError("denominator factor is not normalized")
            for g, e in fs:
                dd[g] = dd.get(g, 0) + e * int(item["mult"])
        return RationalFn.from_factors(num, dd)
    return RationalFn(num, [poly_from_json(obj["den"])])


def dumps(f: RationalFn, **kw) -> str:
    return json.dumps(rational_to_json(f), sort_keys=True, **kw)


def loads(s: str) -> RationalFn:
    return rational_from_json(json.loads(s))
