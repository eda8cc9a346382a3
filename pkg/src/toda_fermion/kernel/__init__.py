"""Exact arithmetic in q^(1/N) and named symbols."""

from .factors import Factor, factor_poly
from .laurent import LaurentPoly
from .monomial import Monomial, MonomialMap, q_denominator, qpow, set_q_denominator, symbol_slot
from .qseries import (
    inv_pochhammer,
    inv_qfact_beta,
    inv_qfact_vector,
    inv_qfactorial,
    pochhammer,
    qbinom,
    qfact_beta,
    qfactorial,
)
from .rational import IrregularPointError, PoleError, RationalFn, rf_equal
from .serialize import dumps, loads, rational_from_json, rational_to_json


def arith(a, b, op: str) -> RationalFn:
    """a op b for op in add, sub, mul, div."""
    a = RationalFn.coerce(a)
    b = RationalFn.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def substitute(f, mapping) -> RationalFn:
    return RationalFn.coerce(f).substitute(mapping)


def invert_q(f) -> RationalFn:
    return RationalFn.coerce(f).invert_q()


def sym(name: str, power: int = 1) -> RationalFn:
    return RationalFn.symbol(name, power)


def q(a=1) -> RationalFn:
    return RationalFn.monomial(qpow(a))


__all__ = [
    "Factor", "factor_poly", "LaurentPoly", "Monomial", "MonomialMap", "q_denominator",
    "qpow", "set_q_denominator", "symbol_slot", "inv_pochhammer", "inv_qfact_beta",
    "inv_qfact_vector", "inv_qfactorial", "pochhammer", "qbinom", "qfact_beta",
    "qfactorial", "IrregularPointError", "PoleError", "RationalFn", "rf_equal", "dumps",
    "loads", "rational_from_json", "rational_to_json", "arith", "substitute", "invert_q",
    "sym", "q",
]
