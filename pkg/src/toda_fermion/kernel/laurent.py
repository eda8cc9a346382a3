"""Sparse multivariate Laurent polynomials with exact rational coefficients."""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable, Mapping

from .monomial import Monomial, MonomialMap, format_key, unpack


def norm_coeff(c):
    """Return ``c`` as an int when it is integral, else as a Fraction."""
    if type(c) is int:
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


class LaurentPoly:
    """Immutable map from packed monomial keys to nonzero coefficients.

    ``data`` is shared freely between instances and must never be mutated.
    """

    __slots__ = ("data", "_hash", "_box")

    def __init__(self, data: Mapping[int, object] | None = None, *, _trusted: bool = False):
        if _trusted:
            self.data = data
        else:
            clean = {}
            for k, c in (data or {}).items():
                if c:
                    clean[int(k)] = norm_coeff(c)
            self.data = clean
        self._hash = None
        self._box = None

    # construction helpers
    @classmethod
    def _wrap(cls, data: dict) -> "LaurentPoly":
        p = cls.__new__(cls)
        p.data = data
        p._hash = None
        p._box = None
        return p

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls._wrap({})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls._wrap({0: 1})

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        c = norm_coeff(c)
        return cls._wrap({0: c} if c else {})

    @classmethod
    def monomial(cls, m: Monomial | int, c=1) -> "LaurentPoly":
        key = m.key if isinstance(m, Monomial) else int(m)
        c = norm_coeff(c)
        return cls._wrap({key: c} if c else {})

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[Monomial, object]]) -> "LaurentPoly":
        acc: dict[int, object] = {}
        for m, c in terms:
            acc[m.key] = acc.get(m.key, 0) + c
        return cls(acc)

    @classmethod
    def binomial(cls, m: Monomial | int, sign: int = -1) -> "LaurentPoly":
        """1 + sign * m, the shape of every factor the recursions divide by."""
        key = m.key if isinstance(m, Monomial) else int(m)
        if key == 0:
            return cls.const(1 + sign)
        return cls._wrap({0: 1, key: sign})

    # inspection
    def terms(self) -> dict[Monomial, object]:
        return {Monomial.from_key(k): c for k, c in self.data.items()}

    def is_zero(self) -> bool:
        return not self.data

    def is_const(self) -> bool:
        return not self.data or (len(self.data) == 1 and 0 in self.data)

    def const_value(self):
        return self.data.get(0, 0)

    def is_monomial(self) -> bool:
        return len(self.data) == 1

    def __len__(self):
        return len(self.data)

    def min_key(self) -> int:
        return min(self.data)

    def max_key(self) -> int:
        return max(self.data)

    def coefficient(self, m: Monomial | int):
        key = m.key if isinstance(m, Monomial) else int(m)
        return self.data.get(key, 0)

    def sorted_items(self):
        """Terms in canonical order: by q-exponent, then sorted symbol exponents."""
        items = [(Monomial.from_key(k), c) for k, c in self.data.items()]
        items.sort(key=lambda mc: mc[0].sort_key())
        return items

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(other)
        if len(self.data) < len(other.data):
            small, big = self.data, other.data
        else:
            small, big = other.data, self.data
        out = dict(big)
        for k, c in small.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                del out[k]
        return LaurentPoly._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._wrap({k: -c for k, c in self.data.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(other)
        out = dict(self.data)
        for k, c in other.data.items():
            v = out.get(k, 0) - c
            if v:
                out[k] = v
            else:
                del out[k]
        return LaurentPoly._wrap(out)

    def __rsub__(self, other):
        return LaurentPoly.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return self.scale(other)
        a, b = self.data, other.data
        if not a or not b:
            return LaurentPoly._wrap({})
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (kb, cb), = b.items()
            if cb == 1:
                return LaurentPoly._wrap({k + kb: c for k, c in a.items()})
            return LaurentPoly._wrap({k + kb: c * cb for k, c in a.items()})
        out: dict[int, object] = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        return LaurentPoly._wrap({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c) -> "LaurentPoly":
        c = norm_coeff(c)
        if not c:
            return LaurentPoly._wrap({})
        if c == 1:
            return self
        return LaurentPoly._wrap({k: norm_coeff(v * c) for k, v in self.data.items()})

    def shift(self, key: int) -> "LaurentPoly":
        """Multiply by the unit monomial with packed key ``key``."""
        if key == 0:
            return self
        return LaurentPoly._wrap({k + key: c for k, c in self.data.items()})

    def __pow__(self, n: int):
        if n < 0:
            if len(self.data) != 1:
                raise ValueError("negative power of a non-monomial Laurent polynomial")
            (k, c), = self.data.items()
            return LaurentPoly._wrap({-k * (-n): norm_coeff(Fraction(1) / Fraction(c) ** (-n))})
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def map_keys(self, mmap: MonomialMap) -> "LaurentPoly":
        if mmap.is_identity():
            return self
        out: dict[int, object] = {}
        for k, c in self.data.items():
            k2 = mmap(k)
            out[k2] = out.get(k2, 0) + c
        return LaurentPoly._wrap({k: c for k, c in out.items() if c})

    def box(self) -> tuple[list[int], list[int]]:
        """Slotwise minimum and maximum exponents over the support."""
        b = self._box
        if b is None:
            lo: list[int] = []
            hi: list[int] = []
            for k in self.data:
                d = unpack(k)
                if len(d) > len(lo):
                    lo.extend([0] * (len(d) - len(lo)))
                    hi.extend([0] * (len(d) - len(hi)))
                for i, e in enumerate(d):
                    if e < lo[i]:
                        lo[i] = e
                    elif e > hi[i]:
                        hi[i] = e
            # slots absent from a term count as exponent 0, handled by the zero start
            b = self._box = (lo, hi)
        return b

    def exact_div(self, f: "LaurentPoly") -> "LaurentPoly | None":
        """Quotient ``self / f`` if it is a Laurent polynomial, else None.

        Lowest terms are eliminated in the monomial group order.  Every
        quotient exponent must lie in the box cut out by the slotwise degree
        ranges of the two operands, which bounds the work when f does not
        divide.
        """
        if not f.data:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.data:
            return self
        fdata = f.data
        if len(fdata) == 1:
            (kf, cf), = fdata.items()
            if cf == 1:
                return self.shift(-kf)
            inv = Fraction(1) / Fraction(cf)
            return LaurentPoly._wrap({k - kf: norm_coeff(c * inv) for k, c in self.data.items()})
        plo, phi = self.box()
        flo, fhi = f.box()
        n = max(len(plo), len(flo))
        plo = plo + [0] * (n - len(plo))
        phi = phi + [0] * (n - len(phi))
        flo = flo + [0] * (n - len(flo))
        fhi = fhi + [0] * (n - len(fhi))
        qlo = [a - b for a, b in zip(plo, flo)]
        qhi = [a - b for a, b in zip(phi, fhi)]
        if any(a > b for a, b in zip(qlo, qhi)):
            return None
        fmin = min(fdata)
        lead = fdata[fmin]
        inv = None if lead == 1 else (Fraction(1) / Fraction(lead))
        rest = [(k - fmin, c) for k, c in fdata.items() if k != fmin]
        rem = dict(self.data)
        heap = list(rem)
        heapq.heapify(heap)
        quot: dict[int, object] = {}
        while heap:
            k = heapq.heappop(heap)
            c = rem.pop(k, 0)
            if not c:
                continue
            qk = k - fmin
            d = unpack(qk)
            for i in range(n):
                e = d[i] if i < len(d) else 0
                if e < qlo[i] or e > qhi[i]:
                    return None
            if len(d) > n:
                return None
            qc = c if inv is None else norm_coeff(c * inv)
            quot[qk] = qc
            for dk, dc in rest:
                kk = k + dk
                v = rem.get(kk)
                if v is None:
                    rem[kk] = -qc * dc
                    heapq.heappush(heap, kk)
                else:
                    rem[kk] = v - qc * dc
        return LaurentPoly._wrap(quot)

    # comparison
    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.data == other.data
        if isinstance(other, (int, Fraction)):
            return self.data == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.data.items()))
        return self._hash

    def __bool__(self):
        return bool(self.data)

    def evaluate(self, point: Mapping[int, Fraction]):
        """Value at ``point``, a map slot -> value (slot 0 is q^(1/N))."""
        total = Fraction(0)
        for k, c in self.data.items():
            v = Fraction(c)
            for slot, e in enumerate(unpack(k)):
                if e:
                    v *= point[slot] ** e
            total += v
        return total

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self.data:
            return "0"
        parts = []
        for m, c in self.sorted_items():
            if m.is_one():
                parts.append(str(c))
            elif c == 1:
                parts.append(format_key(m.key))
            elif c == -1:
                parts.append("-" + format_key(m.key))
            else:
                parts.append(f"{c}*{format_key(m.key)}")
        return " + ".join(parts).replace("+ -", "- ")
