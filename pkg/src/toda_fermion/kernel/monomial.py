"""Monomials q^(a/N) * prod(s_i^e_i) stored as packed exponent vectors.

An exponent vector (e_0, e_1, ...) is encoded as the integer
``sum(e_i * 2**(32*i))`` with signed digits.  Slot 0 holds the exponent of
q^(1/N) and slot i >= 1 the exponent of the i-th registered symbol.  The
encoding is additive, so multiplying monomials is integer addition, and the
integer order coincides with lexicographic order on the vectors read from
the highest slot down.  That makes it a total group order, which the
division routines rely on.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

SLOT_BITS = 32
RADIX = 1 << SLOT_BITS
_HALF = RADIX >> 1
_MASK = RADIX - 1

_lock = threading.Lock()
_names: list[str] = ["q"]
_slots: dict[str, int] = {}
_q_den = 2


def q_denominator() -> int:
    """The fixed N such that all q-exponents live in (1/N)Z."""
    return _q_den


def set_q_denominator(n: int) -> None:
    """Change N.  Existing values silently change meaning, so call this at startup."""
    global _q_den
    if n < 1:
        raise ValueError("q denominator must be positive")
    _q_den = int(n)


def symbol_slot(name: str) -> int:
    """Slot index of ``name``, registering the symbol on first use."""
    slot = _slots.get(name)
    if slot is not None:
        return slot
    if not name or name == "q":
        raise ValueError(f"invalid symbol name {name!r}")
    with _lock:
        slot = _slots.get(name)
        if slot is None:
            _names.append(name)
            slot = len(_names) - 1
            _slots[name] = slot
    return slot


def slot_name(slot: int) -> str:
    return _names[slot]


def unpack(key: int) -> list[int]:
    """Signed digits of ``key``; trailing zero slots are dropped."""
    out = []
    while key:
        r = key & _MASK
        if r >= _HALF:
            r -= RADIX
        out.append(r)
        key = (key - r) >> SLOT_BITS
    return out


def pack(exps: Iterable[int]) -> int:
    key = 0
    shift = 0
    for e in exps:
        if not -_HALF < e < _HALF:
            raise OverflowError("exponent out of range")
        key += e << shift
        shift += SLOT_BITS
    return key


def slot_exponent(key: int, slot: int) -> int:
    digits = unpack(key)
    return digits[slot] if slot < len(digits) else 0


def primitive(key: int) -> tuple[int, int]:
    """Split ``key`` as ``k * x`` with x primitive and positive; returns (x, k)."""
    if key == 0:
        return 0, 0
    g = 0
    for e in unpack(key):
        g = gcd(g, e)
    x = key // g
    if x < 0:
        return -x, -g
    return x, g


def unit_key(slot: int) -> int:
    return 1 << (SLOT_BITS * slot)


def _q_units(a) -> int:
    v = Fraction(a) * _q_den
    if v.denominator != 1:
        raise ValueError(f"q-exponent {a} is not in (1/{_q_den})Z")
    return int(v)


class Monomial:
    """A unit monomial q^a * prod(sym^e); coefficient-free."""

    __slots__ = ("key",)

    def __init__(self, q=0, syms: Mapping[str, int] | None = None, *, key: int | None = None):
        if key is not None:
            self.key = key
            return
        k = _q_units(q)
        for name, e in (syms or {}).items():
            if e:
                k += int(e) * unit_key(symbol_slot(name))
        self.key = k

    @classmethod
    def from_key(cls, key: int) -> "Monomial":
        m = cls.__new__(cls)
        m.key = key
        return m

    @classmethod
    def symbol(cls, name: str, power: int = 1) -> "Monomial":
        return cls.from_key(power * unit_key(symbol_slot(name)))

    @property
    def q_exponent(self) -> Fraction:
        digits = unpack(self.key)
        return Fraction(digits[0] if digits else 0, _q_den)

    @property
    def symbol_exponents(self) -> dict[str, int]:
        digits = unpack(self.key)
        return {_names[i]: e for i, e in enumerate(digits) if i and e}

    def sort_key(self):
        return (self.q_exponent, tuple(sorted(self.symbol_exponents.items())))

    def is_one(self) -> bool:
        return self.key == 0

    def __mul__(self, other):
        if isinstance(other, Monomial):
            return Monomial.from_key(self.key + other.key)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Monomial):
            return Monomial.from_key(self.key - other.key)
        return NotImplemented

    def __pow__(self, n: int):
        return Monomial.from_key(self.key * int(n))

    def inverse(self) -> "Monomial":
        return Monomial.from_key(-self.key)

    def __eq__(self, other):
        return isinstance(other, Monomial) and other.key == self.key

    def __hash__(self):
        return hash(("Monomial", self.key))

    def __repr__(self):
        return f"Monomial({format_key(self.key)})"

    def __str__(self):
        return format_key(self.key)


def qpow(a) -> Monomial:
    """The monomial q^a for a in (1/N)Z."""
    return Monomial.from_key(_q_units(a))


def format_key(key: int) -> str:
    digits = unpack(key)
    if not digits:
        return "1"
    parts = []
    if digits[0]:
        e = Fraction(digits[0], _q_den)
        parts.append("q" if e == 1 else f"q^({e})" if e.denominator != 1 or e < 0 else f"q^{e}")
    for i, e in enumerate(digits[1:], start=1):
        if e:
            parts.append(_names[i] if e == 1 else f"{_names[i]}^{e}" if e > 0 else f"{_names[i]}^({e})")
    return "*".join(parts)


class MonomialMap:
    """A group homomorphism on monomials given by images of some generators.

    Generators not mentioned are fixed.  ``images`` maps slot -> image key.
    """

    __slots__ = ("images", "_delta")

    def __init__(self, images: Mapping[int, int]):
        self.images = {s: k for s, k in images.items() if k != unit_key(s)}
        self._delta = {s: k - unit_key(s) for s, k in self.images.items()}

    def __call__(self, key: int) -> int:
        if not self._delta:
            return key
        digits = unpack(key)
        n = len(digits)
        out = key
        for s, delta in self._delta.items():
            if s < n:
                e = digits[s]
                if e:
                    out += e * delta
        return out

    def is_identity(self) -> bool:
        return not self._delta


def invert_q_map() -> MonomialMap:
    return MonomialMap({0: -1})
