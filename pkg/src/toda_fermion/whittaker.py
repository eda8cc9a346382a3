"""Scalar products J^lambda_beta and the pairings X^{lambda1, lambda2}_beta.

Weights enter only through monomials q^{-(w, alpha_i)}.  A symbolic weight
is a symbol family; by default lambda uses 'z', a second free weight mu
uses 'u' and a second independent weight lambda2 uses 'x'.
"""

from __future__ import annotations

import itertools
import threading
import time
from fractions import Fraction
from typing import Sequence

from .fermionic import FermionicSystem, system_for
from .kernel import LaurentPoly, Monomial, PoleError, RationalFn, qpow
from .kernel.qseries import inv_qfact_beta
from .lie import (
    CartanData,
    WeightExpr,
    build_cartan,
    enumerate_Qplus,
    family_symbol,
    is_dominant,
    is_weight_of_irrep,
    rho,
    root_weight,
    roots_up_to_height,
    weight_root_monomial,
)
from .reports import Report, make_report

LAMBDA = "z"
MU = "u"
LAMBDA2 = "x"


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


class JContext:
    """J^w_beta for one Cartan type, with a shared cache."""

    def __init__(self, cartan: CartanData, family: str = LAMBDA):
        self.cartan = cartan
        self.l = cartan.rank
        self.family = family
        self.system: FermionicSystem = system_for(cartan=cartan, family=family)
        self._cache: dict[tuple, RationalFn] = {}
        self._lock = threading.Lock()

    # weights
    def sym(self, family: str | None = None) -> WeightExpr:
        return WeightExpr.symbolic(family or self.family, self.l)

    def root(self, m) -> WeightExpr:
        return root_weight(self.cartan, m)

    def rho(self) -> WeightExpr:
        return rho(self.cartan)

    def weight_monomial(self, w: WeightExpr, m, sign: int = -1) -> Monomial:
        """q^{sign (w, beta)}."""
        return weight_root_monomial(self.cartan, w, m, sign)

    def root_pair(self, a, b) -> Fraction:
        return self.cartan.root_pair(a, b)

    # J
    def J_base(self, beta) -> RationalFn:
        """J^lambda_beta with lambda the context family."""
        return self.system.semi(tuple(beta))

    def J(self, beta, w: WeightExpr | None = None) -> RationalFn:
        """J^w_beta; zero unless beta lies in Q_+."""
        beta = tuple(int(x) for x in beta)
        if any(x < 0 for x in beta):
            return RationalFn.zero()
        if w is None:
            w = self.sym()
        key = (beta, w)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        base = self.J_base(beta)
        mapping = {}
        for i in range(self.l):
            e = [0] * self.l
            e[i] = 1
            img = self.weight_monomial(w, e, -1)
            name = family_symbol(self.family, i)
            if img != Monomial.symbol(name):
                mapping[name] = img
        val = base.substitute(mapping) if mapping else base
        with self._lock:
            self._cache.setdefault(key, val)
        return val

    def leading_exponent(self, beta, w: WeightExpr) -> Monomial:
        """q^{(beta, beta)/2 - (w + rho, beta)}."""
        return qpow(self.root_pair(beta, beta) / 2 - self.cartan.rho_pair(beta)) * self.weight_monomial(w, beta, -1)

    def J_interval(self, beta, w: WeightExpr | None, lo, hi) -> RationalFn:
        """Sum over decompositions beta = sum_t gamma^(t) on [lo, hi]."""
        beta = tuple(int(x) for x in beta)
        if w is None:
            w = self.sym()
        if any(x < 0 for x in beta):
            return RationalFn.zero()
        if hi == float("inf"):
            if lo == float("-inf"):
                raise ValueError("J on the full line is not defined")
            shift = self.leading_exponent(beta, w) ** int(lo)
            return self.J(beta, w).mul_monomial(shift)
        if lo == float("-inf"):
            raise ValueError("left-infinite intervals are not supported for J")
        lo, hi = int(lo), int(hi)
        if lo > hi:
            return RationalFn.one() if not any(beta) else RationalFn.zero()
        return self._decompositions(beta, w, lo, hi)

    def _decompositions(self, beta, w, lo, hi) -> RationalFn:
        slots = list(range(lo, hi + 1))
        terms = []

        def rec(idx, remaining, gammas):
            if idx == len(slots) - 1:
                seq = gammas + [remaining]
                terms.append(self._decomp_term(seq, slots, w))
                return
            for g in enumerate_Qplus(remaining):
                rec(idx + 1, _sub(remaining, g), gammas + [g])

        rec(0, beta, [])
        return RationalFn.sum(terms)

    def _decomp_term(self, gammas, slots, w) -> RationalFn:
        quad = Fraction(0)
        for a, t in zip(gammas, slots):
            for b, u in zip(gammas, slots):
                quad += min(t, u) * self.root_pair(a, b)
        weighted = [sum(t * g[i] for g, t in zip(gammas, slots)) for i in range(self.l)]
        mono = qpow(quad / 2 - self.cartan.rho_pair(weighted)) * self.weight_monomial(w, weighted, -1)
        val = RationalFn.monomial(mono)
        for g in gammas:
            val = val * inv_qfact_beta(self.cartan, g)
        return val

    # X
    def X(self, beta, w1: WeightExpr, w2: WeightExpr) -> RationalFn:
        """X^{w1, w2}_beta = sum_alpha J^{w1}_{beta-alpha} J^{w2}_alpha q^{(a,a)/2 - (a, w2 + rho)}."""
        beta = tuple(int(x) for x in beta)
        if any(x < 0 for x in beta):
            return RationalFn.zero()
        terms = []
        for a in enumerate_Qplus(beta):
            mono = qpow(self.root_pair(a, a) / 2 - self.cartan.rho_pair(a)) * self.weight_monomial(w2, a, -1)
            terms.append((self.J(_sub(beta, a), w1) * self.J(a, w2)).mul_monomial(mono))
        return RationalFn.sum(terms)

    def recursion_residual(self, beta, w: WeightExpr | None = None) -> RationalFn:
        """J_beta minus the right side of the defining recursion."""
        beta = tuple(beta)
        if w is None:
            w = self.sym()
        terms = []
        for g in enumerate_Qplus(beta):
            mono = self.leading_exponent(g, w)
            terms.append((inv_qfact_beta(self.cartan, _sub(beta, g)) * self.J(g, w)).mul_monomial(mono))
        return self.J(beta, w) - RationalFn.sum(terms)


_contexts: dict[tuple, JContext] = {}
_ctx_lock = threading.Lock()


def context_for(cartan: CartanData, family: str = LAMBDA) -> JContext:
    key = (cartan.kind, cartan.rank, cartan.B, cartan.d, family)
    ctx = _contexts.get(key)
    if ctx is None:
        ctx = JContext(cartan, family)
        with _ctx_lock:
            ctx = _contexts.setdefault(key, ctx)
    return ctx


def J_beta(ctx: JContext, beta, lam: WeightExpr | None = None) -> RationalFn:
    return ctx.J(beta, lam)


def J_interval(ctx: JContext, beta, lam: WeightExpr | None, interval) -> RationalFn:
    return ctx.J_interval(beta, lam, interval.lo, interval.hi)


def X_pair(ctx: JContext, beta, lam1: WeightExpr, lam2: WeightExpr) -> RationalFn:
    return ctx.X(beta, lam1, lam2)


# identities

IDENTITIES = ("id1", "id2", "id3", "id4", "kminus1", "k0", "J0k", "Xsym", "Xqinv", "Jqinv", "Jz0")


def _sides(ctx: JContext, which: str, beta, k: int | None = None):
    """Left and right sides of a named identity, fully symbolic."""
    l = ctx.l
    beta = tuple(beta)
    lam = ctx.sym(LAMBDA)
    mu = ctx.sym(MU)
    lam2 = ctx.sym(LAMBDA2)
    two_rho = ctx.rho().scale(2)
    alphas = enumerate_Qplus(beta)

    if which == "id1":
        lhs = ctx.J(beta, lam)
        rhs = RationalFn.sum(
            ctx.X(a, lam, ctx.root(a) - mu - two_rho) * ctx.J(_sub(beta, a), mu - ctx.root(a))
            for a in alphas)
        return lhs, rhs
    if which == "id2":
        lhs = ctx.J(beta, lam)
        terms = []
        for a in alphas:
            mono = (qpow(-ctx.root_pair(a, a) / 2 + ctx.cartan.rho_pair(a))
                    * ctx.weight_monomial(mu, a, +1)
                    * ctx.weight_monomial(mu - lam, beta, -1))
            terms.append((ctx.X(a, ctx.root(a) - mu - two_rho, lam)
                          * ctx.J(_sub(beta, a), mu - ctx.root(a))).mul_monomial(mono))
        return lhs, RationalFn.sum(terms)
    if which == "id3":
        lhs = ctx.X(beta, lam, lam2)
        rhs = RationalFn.sum(
            ctx.X(_sub(beta, a), mu - ctx.root(a), lam2) * ctx.X(a, lam, ctx.root(a) - mu - two_rho)
            for a in alphas)
        return lhs, rhs
    if which == "id4":
        lhs = ctx.X(beta, lam, lam2)
        rhs = RationalFn.sum(
            ctx.X(_sub(beta, a), lam, mu - ctx.root(a)) * ctx.X(a, ctx.root(a) - mu - two_rho, lam2)
            for a in alphas)
        return lhs, rhs
    if which in ("kminus1", "k0", "J0k"):
        terms = []
        for a in alphas:
            prod = ctx.J(a, ctx.root(a) - lam - two_rho) * ctx.J(_sub(beta, a), lam - ctx.root(a))
            # q^{(a,a)/2 - (lam + rho, a)}
            lead = ctx.leading_exponent(a, lam)
            if which == "kminus1":
                prod = prod.mul_monomial(lead.inverse())
            elif which == "J0k":
                prod = prod.mul_monomial(lead ** int(k))
            terms.append(prod)
        lhs = RationalFn.sum(terms)
        if which == "kminus1":
            rhs = RationalFn.one() if not any(beta) else RationalFn.zero()
        elif which == "k0":
            rhs = inv_qfact_beta(ctx.cartan, beta)
        else:
            rhs = ctx.J_interval(beta, lam, 0, int(k))
        return lhs, rhs
    if which == "Xsym":
        return ctx.X(beta, lam, lam2), ctx.X(beta, lam2, lam)
    if which == "Xqinv":
        lhs = ctx.X(beta, lam, lam2).substitute(_invert_families(l, (LAMBDA, LAMBDA2))).invert_q()
        rhs = ctx.X(beta, lam2, lam).mul_monomial(qpow(ctx.cartan.rho_pair(beta)))
        return lhs, rhs
    if which == "Jqinv":
        lhs = ctx.J(beta, lam).substitute(_invert_families(l, (LAMBDA,))).invert_q()
        rhs = ctx.J(beta, lam).mul_monomial(qpow(ctx.root_pair(beta, beta) / 2) * ctx.weight_monomial(lam, beta, -1))
        return lhs, rhs
    if which == "Jz0":
        lhs = ctx.J(beta, lam).substitute({family_symbol(LAMBDA, i): 0 for i in range(l)})
        rhs = inv_qfact_beta(ctx.cartan, beta)
        return lhs, rhs
    raise ValueError(f"unsupported identity {which!r}")


def _invert_families(l: int, families) -> dict:
    out = {}
    for fam in families:
        for i in range(l):
            n = family_symbol(fam, i)
            out[n] = Monomial.symbol(n, -1)
    return out


def verify_identity(which: str, cartan: CartanData, beta, *, k: int | None = None,
                    mode: str = "exact", seed: int = 0) -> Report:
    """Evaluate both sides of a named identity and compare them."""
    if which not in IDENTITIES:
        raise ValueError(f"unsupported identity {which!r}")
    if which == "J0k" and (k is None or k < 0):
        raise ValueError("J0k needs a nonnegative integer k")
    t0 = time.perf_counter()
    ctx = context_for(cartan)
    lhs, rhs = _sides(ctx, which, beta, k)
    params = {"type": cartan.name, "beta": list(beta)}
    if which == "J0k":
        params["k"] = k
    rep = make_report(which, params, lhs, rhs, mode, seed, t0)
    if which in ("k0", "Xsym") and not cartan.is_ade:
        rep.notes["asserted"] = False
    return rep


# vanishing


def _omega_add(a, b):
    return tuple(Fraction(x) + Fraction(y) for x, y in zip(a, b))


def vanishing_hypotheses(cartan: CartanData, beta, lam1, lam2) -> dict:
    """Check the hypotheses and the weight criterion for explicit lam1, lam2."""
    broot = cartan.root_to_omega(beta)
    two_rho = (2,) * cartan.rank
    mu = tuple(-Fraction(a) - Fraction(b) - c + d for a, b, c, d in zip(lam1, lam2, two_rho, broot))
    top = tuple(-Fraction(a) - Fraction(b) - c for a, b, c in zip(lam1, lam2, two_rho))
    l1b = tuple(Fraction(a) - d for a, d in zip(lam1, broot))
    l2b = tuple(Fraction(b) - d for b, d in zip(lam2, broot))
    nonzero = any(beta)
    hyp = nonzero and is_dominant(mu) and (is_dominant(l1b) or is_dominant(l2b))
    is_wt = is_weight_of_irrep(mu, top, cartan) if is_dominant(mu) else None
    return {"hypotheses": bool(hyp), "is_weight": is_wt, "mu": [str(x) for x in mu],
            "predict_zero": bool(hyp) and is_wt is False}


def specialized_X(ctx: JContext, beta, lam1, lam2) -> RationalFn:
    """X^{lam1, lam2}_beta at explicit weights, specialized after cancellation.

    The weights are moved along lam1 + s, lam2 - s with s symbolic, so that
    lam1 + lam2 stays fixed.  The sum is canonicalized and only then is s
    set to zero.  Independent perturbations of lam1 and lam2 are not used:
    J^{lam1} alone has genuine poles at dominant lam1.
    """
    w1 = WeightExpr.explicit(lam1) + ctx.sym(LAMBDA)
    w2 = WeightExpr.explicit(lam2) - ctx.sym(LAMBDA)
    val = ctx.X(beta, w1, w2)
    one = Monomial()
    return val.substitute({family_symbol(LAMBDA, i): one for i in range(ctx.l)})


def check_vanishing(cartan: CartanData, beta, lam1, lam2) -> Report:
    t0 = time.perf_counter()
    ctx = context_for(cartan)
    info = vanishing_hypotheses(cartan, beta, lam1, lam2)
    val = specialized_X(ctx, beta, lam1, lam2)
    params = {"type": cartan.name, "beta": list(beta), "lam1": [str(x) for x in lam1],
              "lam2": [str(x) for x in lam2]}
    if info["predict_zero"]:
        holds = val.is_zero()
    else:
        holds = True
    rep = Report("vanishing", params, holds, val, RationalFn.zero() if info["predict_zero"] else None,
                 (time.perf_counter() - t0) * 1000.0, {**info, "observed_zero": val.is_zero()})
    return rep


def vanishing_instances(cartan: CartanData, max_height: int = 3, box: int = 1):
    """Explicit (beta, lam1, lam2) meeting the hypotheses with a predicted zero.

    With mu = -lam1 - lam2 - 2 rho + beta dominant, the criterion reduces to
    mu - beta not being a weight of L(mu); lam1 (or lam2) is beta plus a
    small dominant weight and the other weight is then determined.
    """
    l = cartan.rank
    out = []
    doms = list(itertools.product(range(box + 1), repeat=l))
    for h in range(1, max_height + 1):
        for beta in roots_up_to_height(l, h):
            if sum(beta) != h:
                continue
            broot = cartan.root_to_omega(beta)
            for mu in doms:
                nu = tuple(a - b for a, b in zip(mu, broot))
                if is_weight_of_irrep(mu, nu, cartan):
                    continue
                for delta in doms:
                    lam1 = tuple(b + d for b, d in zip(broot, delta))
                    lam2 = tuple(-a - 2 + b - m for a, b, m in zip(lam1, broot, mu))
                    out.append((beta, lam1, lam2))
                    out.append((beta, lam2, lam1))
    seen = set()
    uniq = []
    for item in out:
        if item not in seen:
            seen.add(item)
            uniq.append(item)
    return uniq


def sl2_vanishing_family(n: int, m: int) -> RationalFn:
    """X^{lam - n omega, m alpha - lam - 2 rho}_{m alpha} with lam symbolic."""
    cartan = build_cartan("A", 1)
    ctx = context_for(cartan)
    lam = ctx.sym(LAMBDA)
    w1 = lam - WeightExpr.explicit((n,))
    w2 = ctx.root((m,)) - lam - ctx.rho().scale(2)
    return ctx.X((m,), w1, w2)


def leading_monomial_check(cartan: CartanData, beta) -> Report:
    """The lowest z-power of J_beta(q^-1, z^-1) is z^m with a nonzero coefficient.

    Distinct beta give distinct leading monomials, which is the argument
    behind the linear independence of the J_beta.
    """
    t0 = time.perf_counter()
    ctx = context_for(cartan)
    beta = tuple(beta)
    l = ctx.l
    flipped = ctx.J(beta).substitute(_invert_families(l, (LAMBDA,))).invert_q()
    zm = Monomial(0, {family_symbol(LAMBDA, i): -beta[i] for i in range(l) if beta[i]})
    lead = flipped.mul_monomial(zm).substitute({family_symbol(LAMBDA, i): 0 for i in range(l)})
    expected = inv_qfact_beta(cartan, beta).mul_monomial(qpow(ctx.root_pair(beta, beta) / 2))
    rep = make_report("leading_monomial", {"type": cartan.name, "beta": list(beta)}, lead, expected, t0=t0)
    rep.holds = bool(rep.holds) and not lead.is_zero()
    return rep
