"""Rational functions: an expanded numerator over a factored denominator."""

from __future__ import annotations

import random
import threading
from fractions import Fraction
from typing import Iterable, Mapping

from .factors import Factor, factor_poly
from .laurent import LaurentPoly, norm_coeff
from .monomial import (
    Monomial,
    MonomialMap,
    invert_q_map,
    symbol_slot,
    unit_key,
    unpack,
    _names,
)


class PoleError(ArithmeticError):
    """A substitution or specialization hits a pole."""


class IrregularPointError(PoleError):
    """The function has no limit at the requested zero substitution."""


_pow_lock = threading.Lock()
_pow_cache: dict[tuple[Factor, int], LaurentPoly] = {}


def _factor_power(f: Factor, e: int) -> LaurentPoly:
    if e == 1:
        return f.poly
    key = (f, e)
    p = _pow_cache.get(key)
    if p is None:
        p = f.poly ** e
        with _pow_lock:
            if len(_pow_cache) > 50000:
                _pow_cache.clear()
            _pow_cache[key] = p
    return p


def _product(den: Mapping[Factor, int]) -> LaurentPoly:
    out = LaurentPoly.one()
    for f, e in sorted(den.items(), key=lambda fe: len(fe[0].poly)):
        out = out * _factor_power(f, e)
    return out


def _cancel(num: LaurentPoly, den: dict[Factor, int]) -> tuple[LaurentPoly, dict[Factor, int]]:
    """Divide out every denominator factor that still divides the numerator."""
    if not num.data:
        return num, {}
    for f in list(den):
        e = den[f]
        while e:
            q = num.exact_div(f.poly)
            if q is None:
                break
            num = q
            e -= 1
        if e:
            den[f] = e
        else:
            del den[f]
    return num, den


def _absorb(num: LaurentPoly, den: dict[Factor, int], p: LaurentPoly, mult: int = 1) -> LaurentPoly:
    """Put p^mult into the denominator; returns the adjusted numerator."""
    c, u, fs = factor_poly(p)
    for f, e in fs:
        den[f] = den.get(f, 0) + e * mult
    if u:
        num = num.shift(-u * mult)
    if c != 1:
        num = num.scale(Fraction(1) / Fraction(c) ** mult)
    return num


class RationalFn:
    """An immutable rational function kept in canonical form.

    ``num`` is an expanded Laurent polynomial and ``den`` a sorted tuple of
    (Factor, multiplicity) pairs.  No factor divides the numerator; with only
    cyclotomic factors this makes the representation unique.
    """

    __slots__ = ("num", "den", "_dd")

    def __init__(self, num=None, den: Iterable[LaurentPoly] | None = None):
        """Build num / prod(den); both arguments may be polys or scalars."""
        if num is None:
            num = LaurentPoly.zero()
        elif isinstance(num, Monomial):
            num = LaurentPoly.monomial(num)
        elif not isinstance(num, LaurentPoly):
            num = LaurentPoly.const(num)
        dd: dict[Factor, int] = {}
        for p in den or ():
            if isinstance(p, Monomial):
                p = LaurentPoly.monomial(p)
            elif not isinstance(p, LaurentPoly):
                p = LaurentPoly.const(p)
            if p.is_zero():
                raise ZeroDivisionError("zero denominator")
            num = _absorb(num, dd, p)
        num, dd = _cancel(num, dd)
        self._set(num, dd)

    def _set(self, num: LaurentPoly, dd: dict):
        self.num = num
        if not num.data:
            dd = {}
        self._dd = dd
        self.den = tuple(sorted(dd.items(), key=lambda fe: fe[0].sort_key()))

    @classmethod
    def _make(cls, num: LaurentPoly, dd: dict, cancel: bool = True) -> "RationalFn":
        if cancel:
            num, dd = _cancel(num, dd)
        r = cls.__new__(cls)
        r._set(num, dd)
        return r

    @classmethod
    def from_factors(cls, num: LaurentPoly, factors: Mapping[Factor, int]) -> "RationalFn":
        return cls._make(num, {f: e for f, e in factors.items() if e})

    @classmethod
    def zero(cls):
        return cls._make(LaurentPoly.zero(), {}, False)

    @classmethod
    def one(cls):
        return cls._make(LaurentPoly.one(), {}, False)

    @classmethod
    def monomial(cls, m: Monomial, c=1):
        return cls._make(LaurentPoly.monomial(m, c), {}, False)

    @classmethod
    def symbol(cls, name: str, power: int = 1):
        return cls.monomial(Monomial.symbol(name, power))

    @classmethod
    def coerce(cls, x) -> "RationalFn":
        if isinstance(x, RationalFn):
            return x
        if isinstance(x, (LaurentPoly, Monomial)):
            return cls(x)
        return cls._make(LaurentPoly.const(x), {}, False)

    # inspection
    @property
    def numerator(self) -> LaurentPoly:
        return self.num

    @property
    def denominator(self) -> LaurentPoly:
        return _product(self._dd)

    @property
    def denominator_factors(self) -> tuple:
        return self.den

    def is_zero(self) -> bool:
        return not self.num.data

    def is_polynomial(self) -> bool:
        return not self._dd

    def has_generic_factors(self) -> bool:
        return any(f.generic for f in self._dd)

    # arithmetic
    def __add__(self, other):
        return RationalFn.sum((self, RationalFn.coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return RationalFn.sum((self, -RationalFn.coerce(other)))

    def __rsub__(self, other):
        return RationalFn.sum((RationalFn.coerce(other), -self))

    def __neg__(self):
        return RationalFn._make(-self.num, dict(self._dd), False)

    @staticmethod
    def sum(items: Iterable) -> "RationalFn":
        """Sum over a common denominator followed by a single cancellation pass."""
        items = [RationalFn.coerce(x) for x in items]
        items = [x for x in items if x.num.data]
        if not items:
            return RationalFn.zero()
        if len(items) == 1:
            return items[0]
        lcm: dict[Factor, int] = {}
        for x in items:
            for f, e in x._dd.items():
                if lcm.get(f, 0) < e:
                    lcm[f] = e
        num = LaurentPoly.zero()
        for x in items:
            if len(x._dd) == len(lcm) and all(lcm[f] == e for f, e in x._dd.items()):
                num = num + x.num
                continue
            co = {}
            for f, e in lcm.items():
                k = e - x._dd.get(f, 0)
                if k:
                    co[f] = k
            num = num + x.num * _product(co)
        return RationalFn._make(num, lcm)

    def __mul__(self, other):
        other = RationalFn.coerce(other)
        if not self.num.data or not other.num.data:
            return RationalFn.zero()
        an, ad = self.num, dict(self._dd)
        bn, bd = other.num, dict(other._dd)
        if not ad and not bd:
            return RationalFn._make(an * bn, {}, False)
        if bd:
            an, bd = _cancel(an, bd)
        if ad:
            bn, ad = _cancel(bn, ad)
        for f, e in bd.items():
            ad[f] = ad.get(f, 0) + e
        cancel = any(f.generic for f in ad)
        return RationalFn._make(an * bn, ad, cancel)

    __rmul__ = __mul__

    def mul_monomial(self, m: Monomial | int, c=1) -> "RationalFn":
        key = m.key if isinstance(m, Monomial) else m
        num = self.num.shift(key)
        if c != 1:
            num = num.scale(c)
        return RationalFn._make(num, dict(self._dd), False)

    def inverse(self) -> "RationalFn":
        if not self.num.data:
            raise ZeroDivisionError("inverse of zero")
        dd: dict[Factor, int] = {}
        num = _absorb(_product(self._dd), dd, self.num)
        return RationalFn._make(num, dd, any(f.generic for f in dd))

    def __truediv__(self, other):
        other = RationalFn.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RationalFn.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return RationalFn.one()
        return RationalFn._make(self.num ** n, {f: e * n for f, e in self._dd.items()},
                                any(f.generic for f in self._dd))

    # equality
    def __eq__(self, other):
        if not isinstance(other, RationalFn):
            try:
                other = RationalFn.coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        if self._dd == other._dd:
            return self.num == other.num
        if not self.has_generic_factors() and not other.has_generic_factors():
            return False
        return cross_equal(self, other)

    def __hash__(self):
        if self.has_generic_factors():
            raise TypeError("rational functions with generic factors are unhashable")
        return hash((self.num, self.den))

    # maps
    def map_monomials(self, mmap: MonomialMap) -> "RationalFn":
        """Apply a monomial homomorphism to numerator and denominator."""
        if mmap.is_identity():
            return self
        num = self.num.map_keys(mmap)
        dd: dict[Factor, int] = {}
        for f, e in self._dd.items():
            img = f.poly.map_keys(mmap)
            if img.is_zero():
                raise PoleError(f"denominator factor {f.poly} vanishes under substitution")
            num = _absorb(num, dd, img, e)
        return RationalFn._make(num, dd)

    def substitute(self, mapping: Mapping[str, object]) -> "RationalFn":
        """Substitute symbols by monomials (or by 0 for a regular limit).

        Keys are symbol names; values are Monomial, 0, or None for zero.
        All zero substitutions are performed first, simultaneously.
        """
        zeros = sorted(symbol_slot(s) for s, v in mapping.items() if v is None or (not isinstance(v, Monomial) and v == 0))
        out = self
        if zeros:
            out = out._zero_limit(zeros)
        images = {}
        for s, v in mapping.items():
            if isinstance(v, Monomial):
                images[symbol_slot(s)] = v.key
            elif not (v is None or v == 0):
                raise TypeError(f"cannot substitute {v!r} for {s}")
        if images:
            out = out.map_monomials(MonomialMap(images))
        return out

    def invert_q(self) -> "RationalFn":
        return self.map_monomials(invert_q_map())

    def _zero_limit(self, slots: list[int]) -> "RationalFn":
        if not self.num.data:
            return self

        def svec(key):
            d = unpack(key)
            n = len(d)
            return tuple(d[s] if s < n else 0 for s in slots)

        shifts = [unit_key(s) for s in slots]

        def strip(v):
            return sum(e * u for e, u in zip(v, shifts))

        tot = [0] * len(slots)
        lims = []
        for f, e in self._dd.items():
            vecs = {k: svec(k) for k in f.poly.data}
            mn = tuple(min(v[i] for v in vecs.values()) for i in range(len(slots)))
            lead = {k: c for k, c in f.poly.data.items() if vecs[k] == mn}
            if not lead:
                raise IrregularPointError(f"no limit at zero: factor {f.poly}")
            s = strip(mn)
            lims.append((LaurentPoly({k - s: c for k, c in lead.items()}), e))
            for i in range(len(slots)):
                tot[i] += e * mn[i]
        tot = tuple(tot)
        keep = {}
        for k, c in self.num.data.items():
            v = svec(k)
            if any(a < b for a, b in zip(v, tot)):
                raise PoleError("pole at zero substitution")
            if v == tot:
                keep[k] = c
        s = strip(tot)
        num = LaurentPoly({k - s: c for k, c in keep.items()})
        dd: dict[Factor, int] = {}
        for p, e in lims:
            num = _absorb(num, dd, p, e)
        return RationalFn._make(num, dd)

    # evaluation
    def evaluate(self, point: Mapping[int, Fraction]) -> Fraction:
        den = Fraction(1)
        for f, e in self._dd.items():
            den *= f.poly.evaluate(point) ** e
        if den == 0:
            raise ZeroDivisionError("evaluation point is a pole")
        return self.num.evaluate(point) / den

    def __repr__(self):
        return f"RationalFn({self})"

    def __str__(self):
        if not self._dd:
            return f"{self.num}"
        dens = "*".join(f"({f.poly})" + (f"^{e}" if e > 1 else "") for f, e in self.den)
        return f"({self.num})/({dens})"


def cross_equal(a: RationalFn, b: RationalFn) -> bool:
    """Equality by clearing the multiset lcm of both denominators."""
    lcm: dict[Factor, int] = dict(a._dd)
    for f, e in b._dd.items():
        if lcm.get(f, 0) < e:
            lcm[f] = e

    def lifted(x):
        co = {f: e - x._dd.get(f, 0) for f, e in lcm.items() if e - x._dd.get(f, 0)}
        return x.num * _product(co)

    return lifted(a) == lifted(b)


def _random_value(rng: random.Random) -> Fraction:
    while True:
        v = Fraction(rng.randint(-9, 9), rng.randint(1, 7))
        if v not in (0, 1, -1):
            return v


def rf_equal(a, b, mode: str = "exact", *, rng: random.Random | None = None, points: int = 5):
    """Compare two rational functions.

    mode="exact" returns a bool.  mode="probabilistic" evaluates both sides at
    ``points`` random rational points (at least 3) that avoid poles and
    returns a bool, or None when every attempted point was a pole.
    """
    a = RationalFn.coerce(a)
    b = RationalFn.coerce(b)
    if mode == "exact":
        return a == b
    if mode != "probabilistic":
        raise ValueError(f"unknown comparison mode {mode!r}")
    if rng is None:
        raise ValueError("probabilistic comparison needs a seeded random source")
    points = max(points, 3)
    nslots = len(_names)
    good = 0
    for _ in range(points * 8):
        pt = {s: _random_value(rng) for s in range(nslots)}
        try:
            va = a.evaluate(pt)
            vb = b.evaluate(pt)
        except ZeroDivisionError:
            continue
        if va != vb:
            return False
        good += 1
        if good >= points:
            break
    if good == 0:
        return None
    return True


def as_rational(x) -> RationalFn:
    return RationalFn.coerce(x)


__all__ = [
    "RationalFn",
    "PoleError",
    "IrregularPointError",
    "rf_equal",
    "cross_equal",
    "norm_coeff",
]
