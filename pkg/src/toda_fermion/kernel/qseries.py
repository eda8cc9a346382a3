"""q-Pochhammer symbols, q-factorials and q-binomials."""

from __future__ import annotations

from .laurent import LaurentPoly
from .monomial import Monomial, qpow
from .rational import RationalFn


def _as_monomial(w) -> Monomial:
    if isinstance(w, Monomial):
        return w
    if isinstance(w, str):
        return Monomial.symbol(w)
    raise TypeError(f"expected a monomial, got {w!r}")


def pochhammer(w, n: int) -> LaurentPoly:
    """(w)_n = prod_{i=1..n} (1 - q^(i-1) w), expanded."""
    w = _as_monomial(w)
    out = LaurentPoly.one()
    for i in range(n):
        out = out * LaurentPoly.binomial(w.key + qpow(i).key)
    return out


def pochhammer_factors(w, n: int, base: int = 1) -> list[LaurentPoly]:
    """The n binomials of (w; q^base)_n, unexpanded."""
    w = _as_monomial(w)
    step = qpow(base).key
    return [LaurentPoly.binomial(w.key + i * step) for i in range(n)]


def inv_pochhammer(w, n: int, base: int = 1) -> RationalFn:
    """1 / (w; q^base)_n as a factored rational function."""
    return RationalFn(LaurentPoly.one(), pochhammer_factors(w, n, base))


def qfactorial(n: int, d: int = 1) -> LaurentPoly:
    """(q^d; q^d)_n."""
    out = LaurentPoly.one()
    for i in range(1, n + 1):
        out = out * LaurentPoly.binomial(qpow(d * i).key)
    return out


def inv_qfactorial(n: int, d: int = 1) -> RationalFn:
    return RationalFn(LaurentPoly.one(), [LaurentPoly.binomial(qpow(d * i).key) for i in range(1, n + 1)])


def qfact_beta(cartan, m) -> LaurentPoly:
    """prod_i (q_i; q_i)_{m_i} with q_i = q^{d_i}."""
    out = LaurentPoly.one()
    for mi, di in zip(m, cartan.d):
        if mi < 0:
            raise ValueError("negative root multiplicity")
        out = out * qfactorial(mi, di)
    return out


def inv_qfact_beta(cartan, m) -> RationalFn:
    dens = []
    for mi, di in zip(m, cartan.d):
        dens.extend(LaurentPoly.binomial(qpow(di * i).key) for i in range(1, mi + 1))
    return RationalFn(LaurentPoly.one(), dens)


def inv_qfact_vector(m) -> RationalFn:
    """1 / (q)_m = prod_i 1/(q)_{m_i}."""
    dens = []
    for mi in m:
        dens.extend(LaurentPoly.binomial(qpow(i).key) for i in range(1, mi + 1))
    return RationalFn(LaurentPoly.one(), dens)


def qbinom(gamma, n: int) -> RationalFn:
    """(q^(gamma-n+1))_n / (q)_n.

    ``gamma`` is an integer, a symbol name standing for q^gamma, or a
    Monomial playing the role of q^gamma.
    """
    if isinstance(gamma, int):
        g = qpow(gamma)
    else:
        g = _as_monomial(gamma)
    w = g * qpow(1 - n)
    return RationalFn(pochhammer(w, n), pochhammer_factors(qpow(1), n))
