"""Denominator factors and the partial factorization used to produce them.

Every factor is stored normalized: its lowest term (in the monomial group
order) is the constant 1.  Factors of the form Phi_d(x), a cyclotomic
polynomial in a primitive monomial x, are irreducible; anything else the
factorizer cannot split is kept whole and flagged as generic.
"""

from __future__ import annotations

import cmath
import threading
from fractions import Fraction
from functools import lru_cache

from .laurent import LaurentPoly, norm_coeff
from .monomial import primitive, unpack


@lru_cache(maxsize=None)
def cyclotomic_coeffs(d: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_d(t), lowest degree first, constant term +1."""
    if d == 1:
        return (1, -1)
    # t^d - 1 divided by Phi_e for every proper divisor e
    num = [-1] + [0] * (d - 1) + [1]
    for e in range(1, d):
        if d % e == 0:
            num = _udiv(num, list(cyclotomic_coeffs(e)))
    if num[0] != 1:
        num = [-c for c in num]
    return tuple(num)


def _udiv(p: list, f: list) -> list:
    """Exact division of dense univariate polynomials (lowest degree first)."""
    p = list(p)
    n, m = len(p), len(f)
    lead = f[-1]
    out = [0] * (n - m + 1)
    for i in range(n - m, -1, -1):
        c = p[i + m - 1]
        if c:
            qc = c // lead if lead in (1, -1) else Fraction(c, lead)
            out[i] = qc
            for j in range(m):
                p[i + j] -= qc * f[j]
    return out


def _udiv_try(p: list, f: list):
    """Quotient list if f divides p exactly, else None."""
    p = list(p)
    n, m = len(p), len(f)
    if n < m:
        return None
    lead = f[-1]
    out = [0] * (n - m + 1)
    for i in range(n - m, -1, -1):
        c = p[i + m - 1]
        if c:
            qc = c * lead if lead in (1, -1) else norm_coeff(Fraction(c) / lead)
            out[i] = qc
            for j in range(m):
                p[i + j] -= qc * f[j]
    if any(p[: m - 1]):
        return None
    return out


def totient(n: int) -> int:
    result, k, m = n, 2, n
    while k * k <= m:
        if m % k == 0:
            while m % k == 0:
                m //= k
            result -= result // k
        k += 1
    if m > 1:
        result -= result // m
    return result


class Factor:
    """A normalized denominator factor."""

    __slots__ = ("poly", "cyclotomic", "_hash")

    def __init__(self, poly: LaurentPoly, cyclotomic: tuple[int, int] | None = None):
        self.poly = poly
        self.cyclotomic = cyclotomic  # (d, x) when poly == Phi_d(x)
        self._hash = hash(poly)

    @property
    def generic(self) -> bool:
        return self.cyclotomic is None

    def sort_key(self):
        return (len(self.poly), self.poly.max_key(), tuple(sorted(self.poly.data.items())))

    def __eq__(self, other):
        return isinstance(other, Factor) and self.poly == other.poly

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.cyclotomic:
            return f"Factor(Phi_{self.cyclotomic[0]}: {self.poly})"
        return f"Factor({self.poly})"


_cyc_lock = threading.Lock()
_cyc_cache: dict[tuple[int, int], Factor] = {}


def cyclotomic_factor(d: int, x: int) -> Factor:
    """Phi_d(x) for a primitive monomial key x > 0."""
    key = (d, x)
    f = _cyc_cache.get(key)
    if f is None:
        coeffs = cyclotomic_coeffs(d)
        poly = LaurentPoly({j * x: c for j, c in enumerate(coeffs) if c})
        f = Factor(poly, key)
        with _cyc_lock:
            _cyc_cache.setdefault(key, f)
            f = _cyc_cache[key]
    return f


def _screen(u: list, d: int) -> bool:
    """Cheap numeric test whether Phi_d might divide the univariate u."""
    z = cmath.exp(2j * cmath.pi / d)
    acc = 0j
    scale = 0.0
    zp = 1 + 0j
    for c in u:
        if c:
            fc = float(c)
            acc += fc * zp
            scale += abs(fc)
        zp *= z
    return abs(acc) <= 1e-9 * max(scale, 1.0)


def _univariate_factors(u: list) -> tuple[list[tuple[int, int]], list]:
    """Split off cyclotomic factors of u (u[0] == 1); returns ([(d, mult)], rest)."""
    deg = len(u) - 1
    nz = [i for i, c in enumerate(u) if c]
    if len(nz) == 2:
        k, c = nz[1], u[nz[1]]
        if c == -1:
            return [(d, 1) for d in range(1, k + 1) if k % d == 0], [1]
        if c == 1:
            return [(d, 1) for d in range(1, 2 * k + 1) if (2 * k) % d == 0 and k % d], [1]
    found = []
    d = 1
    # phi(d) >= sqrt(d/2), so d <= 2*deg^2 covers every candidate
    while d <= 2 * deg * deg + 2 and len(u) > 1:
        if totient(d) <= len(u) - 1 and _screen(u, d):
            f = list(cyclotomic_coeffs(d))
            mult = 0
            while len(u) > len(f) - 1:
                qt = _udiv_try(u, f)
                if qt is None:
                    break
                u = qt
                mult += 1
            if mult:
                found.append((d, mult))
        d += 1
    return found, u


def _multiple_of(k: int, x: int) -> bool:
    """True when the exponent vector of k is an integer multiple of that of x."""
    j, r = divmod(k, x)
    if r:
        return False
    dx = unpack(x)
    dk = unpack(k)
    return len(dk) == len(dx) and all(a == j * b for a, b in zip(dk, dx))


_factor_lock = threading.Lock()
_factor_cache: dict[LaurentPoly, tuple] = {}


def factor_poly(p: LaurentPoly):
    """Write p = c * x^u * prod(f^e).

    Returns (c, u, [(Factor, e), ...]) with c a nonzero rational, u a packed
    monomial key and each Factor normalized.  Raises ZeroDivisionError for p = 0.
    """
    if p.is_zero():
        raise ZeroDivisionError("cannot factor the zero polynomial")
    hit = _factor_cache.get(p)
    if hit is not None:
        return hit
    res = _factor_uncached(p)
    with _factor_lock:
        if len(_factor_cache) > 200000:
            _factor_cache.clear()
        _factor_cache[p] = res
    return res


def _factor_uncached(p: LaurentPoly):
    lo = p.min_key()
    c = p.data[lo]
    if len(p) == 1:
        return (c, lo, ())
    inv = Fraction(1) / Fraction(c) if c != 1 else None
    norm = {k - lo: (v if inv is None else norm_coeff(v * inv)) for k, v in p.data.items()}
    keys = [k for k in norm if k]
    x = primitive(min(keys))[0]
    if all(_multiple_of(k, x) for k in keys):
        # collinear support: univariate in the primitive direction x
        deg = max(keys) // x
        u = [0] * (deg + 1)
        for k, v in norm.items():
            u[k // x] = v
        found, rest = _univariate_factors(u)
        factors = [(cyclotomic_factor(d, x), e) for d, e in found]
        if len(rest) > 1:
            factors.append((Factor(LaurentPoly({j * x: v for j, v in enumerate(rest) if v})), 1))
        elif rest[0] != 1:
            c = norm_coeff(c * rest[0])
        return (c, lo, tuple(sorted(factors, key=lambda fe: fe[0].sort_key())))
    poly = LaurentPoly(norm)
    factors = []
    dirs = sorted({primitive(k)[0] for k in keys})
    for xd in dirs:
        for d in range(1, 7):
            f = cyclotomic_factor(d, xd)
            while len(poly) > 1:
                qt = poly.exact_div(f.poly)
                if qt is None:
                    break
                poly = qt
                factors.append((f, 1))
    if len(poly) > 1:
        # renormalize the leftover
        lo2 = poly.min_key()
        c2 = poly.data[lo2]
        if lo2 or c2 != 1:
            inv2 = Fraction(1) / Fraction(c2)
            poly = LaurentPoly({k - lo2: norm_coeff(v * inv2) for k, v in poly.data.items()})
            lo += lo2
            c = norm_coeff(c * c2)
        factors.append((Factor(poly), 1))
    else:
        (k0, v0), = poly.data.items()
        lo += k0
        c = norm_coeff(c * v0)
    merged: dict[Factor, int] = {}
    for f, e in factors:
        merged[f] = merged.get(f, 0) + e
    return (c, lo, tuple(sorted(merged.items(), key=lambda fe: fe[0].sort_key())))
