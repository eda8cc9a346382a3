"""Fermionic sums over finite, semi-infinite and doubly infinite intervals.

A sum is attached to a symmetric matrix C (the quadratic form), the bases
of its q-factorials (all 1 for the plain sums, d_i for the symmetrized
Cartan matrix of a non-simply-laced algebra) and a family of symbols z_i.
Semi-infinite sums come from the fermionic recursion; everything else is
reduced to them by exact cuts of the interval, so no identity that is only
conjectured is ever used for evaluation.
"""

from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .kernel import LaurentPoly, Monomial, RationalFn, qpow
from .kernel.qseries import qfactorial
from .lie import CartanData, enumerate_Qplus, family_symbol

INF = math.inf


# configurations


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if self.lo != -INF and self.hi != INF and self.lo > self.hi + 1:
            raise ValueError("interval must satisfy lo <= hi + 1")

    @property
    def finite(self) -> bool:
        return self.lo != -INF and self.hi != INF

    @staticmethod
    def parse(text: str) -> "Interval":
        a, b = (x.strip().lower() for x in text.split(","))

        def conv(x):
            if x in ("inf", "+inf", "infinity"):
                return INF
            if x in ("-inf", "-infinity"):
                return -INF
            return int(x)

        return Interval(conv(a), conv(b))


@dataclass(frozen=True)
class Configuration:
    """Particle counts m_{i,t}; stored as per-color sorted weight tuples."""

    positions: tuple     # positions[i] = sorted weights p_{i,1} <= ... <= p_{i,m_i}
    interval: Interval

    @property
    def m_it(self) -> dict:
        out = {}
        for i, ps in enumerate(self.positions):
            for t in ps:
                out[(i, t)] = out.get((i, t), 0) + 1
        return out

    @property
    def marginals(self) -> tuple:
        return tuple(len(ps) for ps in self.positions)


def enum_configs(m: Sequence[int], interval: Interval) -> Iterable[Configuration]:
    """All configurations with colour marginals m on a finite interval."""
    if not interval.finite:
        raise ValueError("configurations are enumerated on finite intervals only")
    lo, hi = int(interval.lo), int(interval.hi)
    weights = range(lo, hi + 1)
    per_color = [list(itertools.combinations_with_replacement(weights, mi)) for mi in m]
    for combo in itertools.product(*per_color):
        yield Configuration(tuple(combo), interval)


def quadratic_Q(C, config: Configuration) -> Fraction:
    """Q_C through the m_{i,t} coordinates and the kernel min(t, t')."""
    counts = list(config.m_it.items())
    total = Fraction(0)
    for (i, t), a in counts:
        for (j, u), b in counts:
            total += Fraction(C[i][j]) * min(t, u) * a * b
    for (i, t), a in counts:
        total -= Fraction(C[i][i]) * t * a
    return total / 2


def quadratic_Q_p(C, config: Configuration) -> Fraction:
    """Q_C through the ordered particle positions p_{i,j}."""
    parts = [(i, p) for i, ps in enumerate(config.positions) for p in ps]
    total = Fraction(0)
    for i, p in parts:
        for j, u in parts:
            total += Fraction(C[i][j]) * min(p, u)
    for i, p in parts:
        total -= Fraction(C[i][i]) * p
    return total / 2


def W(C, m: Sequence[int]) -> Fraction:
    """W_{C,m} = (Cm.m - diag(C).m) / 2."""
    l = len(m)
    s = Fraction(0)
    for i in range(l):
        if m[i]:
            s += sum(Fraction(C[i][j]) * m[j] for j in range(l)) * m[i]
            s -= Fraction(C[i][i]) * m[i]
    return s / 2


# corner profiles


def angle_monomial(v) -> Monomial:
    """An angle entry: int/Fraction n -> q^n, str -> that symbol, Monomial as is."""
    if isinstance(v, Monomial):
        return v
    if isinstance(v, str):
        return Monomial.symbol(v)
    return qpow(v)


@dataclass(frozen=True)
class CornerProfile:
    """mu_{i,t} = sum over corners (k, nu) of (t - k)_+ * nu_i."""

    corners: tuple = ()   # ((k, (nu_1, ..., nu_l)), ...)

    def __post_init__(self):
        ks = [k for k, _ in self.corners]
        if any(b <= a for a, b in zip(ks, ks[1:])):
            raise ValueError("corner positions must be strictly increasing")

    @staticmethod
    def single(k: int, nu: Sequence) -> "CornerProfile":
        return CornerProfile(((k, tuple(nu)),))

    @staticmethod
    def from_list(corners: Iterable) -> "CornerProfile":
        merged: dict[int, list] = {}
        order = []
        for k, nu in corners:
            if k in merged:
                merged[k] = [angle_monomial(a) * angle_monomial(b) for a, b in zip(merged[k], nu)]
            else:
                merged[k] = list(nu)
                order.append(k)
        return CornerProfile(tuple((k, tuple(merged[k])) for k in sorted(order)))

    def weight(self, i: int, t: int) -> Monomial:
        """q^{mu_{i,t}}."""
        key = 0
        for k, nu in self.corners:
            if t > k:
                key += (t - k) * angle_monomial(nu[i]).key
        return Monomial.from_key(key)

    def total_angle(self, i: int) -> Monomial:
        key = sum(angle_monomial(nu[i]).key for _, nu in self.corners)
        return Monomial.from_key(key)

    @property
    def first(self) -> int:
        return self.corners[0][0]

    @property
    def last(self) -> int:
        return self.corners[-1][0]


class DivergentSumError(ValueError):
    """The requested infinite sum does not define a rational function."""


# the evaluator


class FermionicSystem:
    """Fermionic sums for one quadratic form, with memoized recursion."""

    def __init__(self, C, qbase: Sequence | None = None, family: str = "z"):
        self.C = tuple(tuple(Fraction(x) for x in row) for row in C)
        self.l = len(self.C)
        if any(self.C[i][j] != self.C[j][i] for i in range(self.l) for j in range(self.l)):
            raise ValueError("the quadratic form must be symmetric")
        self.qbase = tuple(Fraction(x) for x in (qbase or (1,) * self.l))
        self.family = family
        self.names = tuple(family_symbol(family, i) for i in range(self.l))
        self._memo: dict[tuple, RationalFn] = {(0,) * self.l: RationalFn.one()}
        self._lock = threading.Lock()
        self._qf: dict[tuple, RationalFn] = {}

    @classmethod
    def from_cartan(cls, cartan: CartanData, family: str = "z") -> "FermionicSystem":
        """Symmetrized form with (q_i; q_i) denominators."""
        return cls(cartan.B, cartan.d, family)

    @classmethod
    def plain(cls, C, family: str = "z") -> "FermionicSystem":
        return cls(C, None, family)

    # small pieces
    def W(self, m) -> Fraction:
        return W(self.C, m)

    def Cm(self, m) -> tuple:
        return tuple(sum(self.C[i][j] * m[j] for j in range(self.l)) for i in range(self.l))

    def zpow(self, m, qexp=0) -> Monomial:
        """z^m q^qexp."""
        return Monomial(qexp, {n: e for n, e in zip(self.names, m) if e})

    def inv_qfact(self, m) -> RationalFn:
        m = tuple(m)
        hit = self._qf.get(m)
        if hit is None:
            dens = []
            for mi, di in zip(m, self.qbase):
                dens.extend(LaurentPoly.binomial(qpow(di * k).key) for k in range(1, mi + 1))
            hit = RationalFn(LaurentPoly.one(), dens)
            self._qf[m] = hit
        return hit

    def qfact_poly(self, m) -> LaurentPoly:
        out = LaurentPoly.one()
        for mi, di in zip(m, self.qbase):
            out = out * qfactorial(mi, di)
        return out

    # substitutions of z
    def shift_z(self, vec) -> dict:
        """z_i -> q^{vec_i} z_i."""
        return {n: Monomial(v, {n: 1}) for n, v in zip(self.names, vec) if v}

    def scale_z(self, mons: Sequence[Monomial]) -> dict:
        """z_i -> mons_i * z_i."""
        out = {}
        for n, mono in zip(self.names, mons):
            if not mono.is_one():
                out[n] = mono * Monomial.symbol(n)
        return out

    def reflect_z(self, m) -> dict:
        """z_i -> z_i^{-1} q^{-(Cm)_i + C_ii}."""
        cm = self.Cm(m)
        return {n: Monomial(-cm[i] + self.C[i][i], {n: -1}) for i, n in enumerate(self.names)}

    # semi-infinite sums
    def semi(self, m) -> RationalFn:
        """I_m(q, z) on [0, infinity) by the fermionic recursion."""
        m = tuple(int(x) for x in m)
        if any(x < 0 for x in m):
            return RationalFn.zero()
        hit = self._memo.get(m)
        if hit is not None:
            return hit
        order = sorted(enumerate_Qplus(m), key=lambda a: (sum(a), a))
        for a in order:
            if a not in self._memo:
                self._solve(a)
        return self._memo[m]

    def _solve(self, m: tuple) -> None:
        terms = []
        for a in enumerate_Qplus(m):
            if a == m:
                continue
            terms.append(self.inv_qfact(tuple(x - y for x, y in zip(m, a)))
                         .mul_monomial(self.zpow(a, self.W(a))) * self._memo[a])
        rhs = RationalFn.sum(terms)
        lead = LaurentPoly.binomial(self.zpow(m, self.W(m)))
        if lead.is_zero():
            raise ZeroDivisionError("degenerate leading factor in the fermionic recursion")
        val = rhs / RationalFn(lead)
        with self._lock:
            self._memo.setdefault(m, val)

    def recursion_residual(self, m) -> RationalFn:
        """LHS minus RHS of the fermionic recursion at m (zero when it holds)."""
        m = tuple(m)
        rhs = RationalFn.sum(
            self.inv_qfact(tuple(x - y for x, y in zip(m, a))).mul_monomial(self.zpow(a, self.W(a)))
            * self.semi(a) for a in enumerate_Qplus(m))
        return self.semi(m) - rhs

    def semi_from(self, m, k: int) -> RationalFn:
        """I_m on [k, infinity) (shift of the interval)."""
        m = tuple(m)
        return self.semi(m).mul_monomial(self.zpow(m, self.W(m)) ** k)

    def semi_to(self, m, k: int) -> RationalFn:
        """I_m on (-infinity, k] (reflection of the interval)."""
        m = tuple(m)
        return self.semi(m).substitute(self.reflect_z(m)).mul_monomial(self.zpow(m, self.W(m)) ** k)

    # finite sums
    def finite(self, m, lo: int, hi: int, profile: CornerProfile | None = None,
               mu: Callable[[int, int], Monomial] | None = None) -> RationalFn:
        """Direct sum over all configurations on [lo, hi]."""
        m = tuple(m)
        if lo > hi:
            return RationalFn.one() if not any(m) else RationalFn.zero()
        if profile is not None:
            mu = profile.weight
        qf = self.qfact_poly(m)
        num: dict[int, object] = {}
        multi_cache: dict[tuple, LaurentPoly] = {}
        for cfg in enum_configs(m, Interval(lo, hi)):
            counts = cfg.m_it
            qe = quadratic_Q(self.C, cfg)
            key = Monomial(qe, {}).key
            for i, ps in enumerate(cfg.positions):
                if ps:
                    key += Monomial.symbol(self.names[i], sum(ps)).key
            if mu is not None:
                for (i, t), c in counts.items():
                    key += c * mu(i, t).key
            sig = tuple(sorted(counts.items()))
            mult = multi_cache.get(sig)
            if mult is None:
                den = LaurentPoly.one()
                for (i, t), c in counts.items():
                    den = den * qfactorial(c, self.qbase[i])
                mult = qf.exact_div(den)
                multi_cache[sig] = mult
            for k, c in mult.data.items():
                kk = k + key
                num[kk] = num.get(kk, 0) + c
        return RationalFn(LaurentPoly(num)) * self.inv_qfact(m)

    # general intervals
    def cut(self, m, left: Callable, right: Callable) -> RationalFn:
        """Exact cut: sum_a L_{m-a}(q, q^{Ca} z) R_a(z)."""
        m = tuple(m)
        terms = []
        for a in enumerate_Qplus(m):
            ra = right(a)
            if ra.is_zero():
                continue
            la = left(tuple(x - y for x, y in zip(m, a)))
            if la.is_zero():
                continue
            terms.append(la.substitute(self.shift_z(self.Cm(a))) * ra)
        return RationalFn.sum(terms)

    def interval(self, m, lo, hi, profile: CornerProfile | None = None) -> RationalFn:
        """I_{C, mu, m}(q, z | lo, hi) with mu given by a corner profile (or zero)."""
        m = tuple(int(x) for x in m)
        if not any(m):
            return RationalFn.one()
        if profile is not None and not profile.corners:
            profile = None
        if lo != -INF and hi != INF:
            return self.finite(m, int(lo), int(hi), profile)
        if profile is None:
            if lo == -INF and hi == INF:
                raise DivergentSumError("the sum over all of Z with mu = 0 diverges")
            if hi == INF:
                return self.semi_from(m, int(lo))
            return self.semi_to(m, int(hi))
        if lo == -INF and hi == INF:
            return self.X(profile, m)
        if hi == INF:
            return self._right_tail(m, int(lo), profile)
        return self._left_tail(m, int(hi), profile)

    def _right_tail(self, m, lo: int, profile: CornerProfile) -> RationalFn:
        """[lo, infinity): finite head up to the last corner, linear tail after."""
        K = max(lo, profile.last)
        kappa = [profile.weight(i, K) for i in range(self.l)]
        scale = [profile.total_angle(i) for i in range(self.l)]
        smap = self.scale_z(scale)

        def tail(a):
            base = self.semi(a).substitute(smap) if smap else self.semi(a)
            mono = self.zpow(a, self.W(a)) ** K
            for i, ai in enumerate(a):
                mono = mono * kappa[i] ** ai
            return base.mul_monomial(mono)

        if K == lo:
            return tail(m)
        return self.cut(m, lambda b: self.finite(b, lo, K - 1, profile), tail)

    def _left_tail(self, m, hi: int, profile: CornerProfile) -> RationalFn:
        """(-infinity, hi]: mu vanishes left of the first corner."""
        L = min(hi, profile.first)
        if L == hi:
            return self.semi_to(m, hi)
        return self.cut(m, lambda b: self.semi_to(b, L), lambda a: self.finite(a, L + 1, hi, profile))

    def X(self, profile: CornerProfile, m, cut: int | None = None) -> RationalFn:
        """Sum over all of Z; cut at u (default: the first corner)."""
        if profile is None or not profile.corners:
            raise DivergentSumError("a sum over Z needs at least one corner")
        m = tuple(int(x) for x in m)
        if not any(m):
            return RationalFn.one()
        u = profile.first if cut is None else cut
        if u > profile.first:
            raise ValueError("the cut must lie at or left of the first corner")
        return self.cut(m, lambda b: self.semi_to(b, u),
                        lambda a: self._right_tail(a, u + 1, profile))

    def X_corner(self, k: int, nu: Sequence, m, cut_offset: int = 0) -> RationalFn:
        """X^{(k, nu)}_m: a single corner at k with angle nu."""
        prof = CornerProfile.single(k, nu)
        return self.X(prof, m, k - cut_offset)

    def J_corner(self, k: int, nu: Sequence, m) -> RationalFn:
        """J^{(k, nu)}_m: the single-corner profile on [0, infinity)."""
        return self._right_tail(tuple(m), 0, CornerProfile.single(k, nu))


_systems: dict[tuple, FermionicSystem] = {}
_systems_lock = threading.Lock()


def system_for(C=None, cartan: CartanData | None = None, family: str = "z") -> FermionicSystem:
    """Shared evaluator keyed by the quadratic form; memo tables persist."""
    if cartan is not None:
        key = ("cartan", cartan.B, cartan.d, family)
    else:
        key = ("plain", tuple(tuple(Fraction(x) for x in r) for r in C), family)
    sysm = _systems.get(key)
    if sysm is None:
        sysm = FermionicSystem.from_cartan(cartan, family) if cartan is not None else FermionicSystem.plain(C, family)
        with _systems_lock:
            sysm = _systems.setdefault(key, sysm)
    return sysm


def I_eval(C, profile, m, interval: Interval, cartan: CartanData | None = None) -> RationalFn:
    """Fermionic sum I_{C, mu, m}(q, z | interval)."""
    sysm = system_for(C, cartan)
    if isinstance(profile, CornerProfile) or profile is None:
        return sysm.interval(m, interval.lo, interval.hi, profile)
    if not interval.finite:
        raise ValueError("explicit mu is supported on finite intervals only")
    return sysm.finite(m, int(interval.lo), int(interval.hi), mu=profile)


def X_eval(C, corners: CornerProfile, m, cartan: CartanData | None = None) -> RationalFn:
    return system_for(C, cartan).X(corners, m)
