"""Cartan data, weights and the Weyl-group helpers for types A-D."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .kernel import Monomial, qpow


def _solve(mat: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction]:
    """Solve a nonsingular rational linear system by Gauss-Jordan elimination."""
    n = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(r)] for row, r in zip(mat, rhs)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def _simple_roots_eps(kind: str, l: int) -> list[list[int]]:
    """Simple roots in the orthonormal basis; A uses l+1 coordinates."""
    width = l + 1 if kind == "A" else l
    rows = []
    for i in range(l - 1):
        r = [0] * width
        r[i], r[i + 1] = 1, -1
        rows.append(r)
    last = [0] * width
    if kind == "A":
        last[l - 1], last[l] = 1, -1
    elif kind == "B":
        last[l - 1] = 1
    elif kind == "C":
        last[l - 1] = 2
    elif kind == "D":
        last[l - 2], last[l - 1] = 1, 1
    rows.append(last)
    return rows


@dataclass(frozen=True)
class CartanData:
    kind: str
    rank: int
    C: tuple
    d: tuple
    B: tuple
    eps_square: Fraction | None = None
    simple_eps: tuple | None = None
    eps_coords: tuple | None = None

    @property
    def l(self) -> int:
        return self.rank

    @property
    def rho_pairings(self) -> tuple:
        return self.d

    @property
    def simply_laced(self) -> bool:
        return all(x == self.d[0] for x in self.d)

    @property
    def is_ade(self) -> bool:
        return self.kind in ("A", "D") or (self.kind == "custom" and all(x == 1 for x in self.d))

    @property
    def name(self) -> str:
        return f"{self.kind}{self.rank}" if self.kind != "custom" else f"custom{self.rank}"

    def root_pair(self, m: Sequence[int], n: Sequence[int]) -> Fraction:
        """(beta, gamma) for beta = sum m_i alpha_i, gamma = sum n_i alpha_i."""
        s = Fraction(0)
        for i, mi in enumerate(m):
            if mi:
                row = self.B[i]
                for j, nj in enumerate(n):
                    if nj:
                        s += mi * nj * row[j]
        return s

    def rho_pair(self, m: Sequence[int]) -> Fraction:
        return sum((Fraction(di) * mi for di, mi in zip(self.d, m)), Fraction(0))

    def alpha_omega(self, k: int) -> tuple:
        """omega-coordinates of alpha_k (column k of C)."""
        return tuple(self.C[i][k] for i in range(self.rank))

    def root_to_omega(self, m: Sequence[int]) -> tuple:
        return tuple(sum(self.C[i][k] * m[k] for k in range(self.rank)) for i in range(self.rank))

    def omega_to_root(self, w: Sequence) -> list[Fraction]:
        """Coefficients over simple roots of the weight with omega-coordinates w."""
        return _solve([[Fraction(x) for x in row] for row in self.C], [Fraction(x) for x in w])

    def eps_root_pair(self, i: int, m: Sequence[int]) -> Fraction:
        """(beta, eps_i) for beta with root multiplicities m."""
        if self.simple_eps is None:
            raise ValueError("epsilon coordinates exist only for types A-D")
        return self.eps_square * sum(
            (mj * self.simple_eps[j][i] for j, mj in enumerate(m)), Fraction(0))

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "rank": self.rank,
            "C": [list(r) for r in self.C],
            "d": [str(x) for x in self.d],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


# default (eps, eps) per type, chosen so the d_i are coprime positive integers
_EPS_SQUARE = {"A": 1, "B": 2, "C": 1, "D": 1}


def build_cartan(kind: str, rank: int, *, eps_square=None) -> CartanData:
    """Cartan data of type A_l, B_l, C_l or D_l.

    ``eps_square`` overrides the length of the orthonormal vectors, which
    rescales the invariant form and the d_i together.
    """
    kind = kind.upper()
    if kind not in _EPS_SQUARE:
        raise ValueError(f"unsupported type {kind!r}")
    l = int(rank)
    min_rank = {"A": 1, "B": 2, "C": 2, "D": 3}[kind]
    if l < min_rank:
        raise ValueError(f"type {kind} needs rank >= {min_rank}")
    e2 = Fraction(_EPS_SQUARE[kind] if eps_square is None else eps_square)
    roots = _simple_roots_eps(kind, l)

    def dot(a, b):
        return e2 * sum(x * y for x, y in zip(a, b))

    B = tuple(tuple(dot(roots[i], roots[j]) for j in range(l)) for i in range(l))
    d = tuple(B[i][i] / 2 for i in range(l))
    C = tuple(tuple(int(B[i][j] / d[i]) for j in range(l)) for i in range(l))
    B = tuple(tuple(_intify(x) for x in row) for row in B)
    d = tuple(_intify(x) for x in d)
    # eps_i projected onto the span of the roots, written over simple roots
    coords = []
    width = len(roots[0])
    for i in range(width):
        rhs = [e2 * roots[j][i] for j in range(l)]
        coords.append(tuple(_solve(B, rhs)))
    return CartanData(kind, l, C, d, B, e2, tuple(tuple(r) for r in roots), tuple(coords))


def _intify(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def custom_cartan(C: Sequence[Sequence[int]]) -> CartanData:
    """Arbitrary symmetric matrix, used only for fermionic sums."""
    C = tuple(tuple(int(x) for x in row) for row in C)
    l = len(C)
    if any(len(row) != l for row in C):
        raise ValueError("Cartan matrix must be square")
    if any(C[i][j] != C[j][i] for i in range(l) for j in range(l)):
        raise ValueError("custom Cartan matrix must be symmetric")
    return CartanData("custom", l, C, tuple([1] * l), C)


def parse_cartan_type(spec: str) -> CartanData:
    """'A2', 'B2', 'C3', 'D4' -> CartanData."""
    spec = spec.strip()
    return build_cartan(spec[0], int(spec[1:]))


def read_cartan_file(path: str) -> CartanData:
    """First line l, then l rows of whitespace-separated integers."""
    with open(path) as fh:
        lines = [ln.split() for ln in fh if ln.strip()]
    if not lines or len(lines[0]) != 1:
        raise ValueError("malformed matrix file: first line must hold the rank")
    l = int(lines[0][0])
    rows = lines[1:]
    if len(rows) != l or any(len(r) != l for r in rows):
        raise ValueError("malformed matrix file: expected an l x l integer matrix")
    return custom_cartan([[int(x) for x in r] for r in rows])


# weights


@dataclass(frozen=True)
class WeightExpr:
    """sum_F c_F * F + sum_i w_i * omega_i with symbolic weights F.

    A symbolic weight F is named by a symbol family; its i-th symbol stands
    for q^{-(F, alpha_i)}.
    """

    families: tuple = ()          # sorted (family, coefficient) pairs
    omega: tuple = ()             # explicit part in omega-coordinates

    @staticmethod
    def make(families: Mapping[str, object] | None = None, omega: Sequence | None = None, rank: int | None = None):
        fam = tuple(sorted((k, Fraction(v)) for k, v in (families or {}).items() if v))
        if omega is None:
            omega = (0,) * (rank or 0)
        return WeightExpr(fam, tuple(Fraction(x) for x in omega))

    @staticmethod
    def symbolic(family: str, rank: int) -> "WeightExpr":
        return WeightExpr.make({family: 1}, rank=rank)

    @staticmethod
    def explicit(omega: Sequence) -> "WeightExpr":
        return WeightExpr.make(None, omega)

    def _omega(self, rank):
        return self.omega if self.omega else (Fraction(0),) * rank

    def __add__(self, other: "WeightExpr") -> "WeightExpr":
        fam = dict(self.families)
        for k, v in other.families:
            fam[k] = fam.get(k, 0) + v
        n = max(len(self.omega), len(other.omega))
        a = self.omega + (Fraction(0),) * (n - len(self.omega))
        b = other.omega + (Fraction(0),) * (n - len(other.omega))
        return WeightExpr.make(fam, tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> "WeightExpr":
        return WeightExpr.make({k: -v for k, v in self.families}, tuple(-x for x in self.omega))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "WeightExpr":
        c = Fraction(c)
        return WeightExpr.make({k: v * c for k, v in self.families}, tuple(x * c for x in self.omega))

    @property
    def is_integral_explicit(self) -> bool:
        return not self.families and all(x.denominator == 1 for x in self.omega)

    def __str__(self):
        parts = [f"{v}*{k}" for k, v in self.families]
        if any(self.omega):
            parts.append("omega" + str(tuple(str(x) for x in self.omega)))
        return " + ".join(parts) or "0"


def root_weight(cartan: CartanData, m: Sequence[int]) -> WeightExpr:
    """The root sum m_i alpha_i as a weight."""
    return WeightExpr.explicit(cartan.root_to_omega(m))


def rho(cartan: CartanData) -> WeightExpr:
    return WeightExpr.explicit((1,) * cartan.rank)


def family_symbol(family: str, i: int) -> str:
    return f"{family}{i + 1}"


def weight_root_monomial(cartan: CartanData, w: WeightExpr, m: Sequence[int], sign: int = -1) -> Monomial:
    """The monomial q^{sign * (w, beta)} for beta = sum m_i alpha_i.

    Symbolic parts are rendered through family symbols, so with sign=-1 a
    symbolic weight lambda of family 'z' gives z^m.
    """
    syms: dict[str, int] = {}
    for fam, c in w.families:
        for i, mi in enumerate(m):
            if mi:
                e = -sign * c * mi
                if Fraction(e).denominator != 1:
                    raise ValueError("symbolic pairing needs an integral exponent")
                name = family_symbol(fam, i)
                syms[name] = syms.get(name, 0) + int(e)
    om = w._omega(cartan.rank)
    expo = sum((Fraction(cartan.d[i]) * om[i] * mi for i, mi in enumerate(m)), Fraction(0))
    return Monomial(sign * expo, syms)


def pair_explicit(cartan: CartanData, w: WeightExpr, m: Sequence[int]) -> Fraction:
    """(w, beta) for an explicit weight w."""
    if w.families:
        raise ValueError("weight has symbolic parts")
    om = w._omega(cartan.rank)
    return sum((Fraction(cartan.d[i]) * om[i] * mi for i, mi in enumerate(m)), Fraction(0))


def pair(x, y, cartan: CartanData):
    """Bilinear form on weights and roots.

    Roots are given as integer sequences of simple-root multiplicities.
    Returns a Fraction when no symbols are involved; when exactly one side
    is symbolic and the other a root, returns the Monomial q^{-(x, y)}.
    """
    x_root = not isinstance(x, WeightExpr)
    y_root = not isinstance(y, WeightExpr)
    if x_root and y_root:
        return cartan.root_pair(x, y)
    if x_root:
        x, y = y, x
    if not (x_root or y_root):
        # weight-weight: only explicit weights, through the inverse Cartan matrix
        if x.families or y.families:
            raise ValueError("pairing of two symbolic weights is not a q-monomial")
        coeffs = cartan.omega_to_root(y._omega(cartan.rank))
        return sum((Fraction(cartan.d[i]) * x._omega(cartan.rank)[i] * coeffs[i]
                    for i in range(cartan.rank)), Fraction(0))
    if x.families:
        return weight_root_monomial(cartan, x, y, -1)
    return pair_explicit(cartan, x, y)


# Weyl group and dominance


def reflect(cartan: CartanData, nu: Sequence, i: int) -> tuple:
    """s_i on omega-coordinates."""
    c = nu[i]
    return tuple(nu[j] - c * cartan.C[j][i] for j in range(cartan.rank))


def dominant_rep(nu, cartan: CartanData) -> tuple:
    """Dominant element of the Weyl orbit of an integral weight (omega-coordinates)."""
    if isinstance(nu, WeightExpr):
        if nu.families:
            raise ValueError("dominant_rep needs an explicit weight")
        nu = nu._omega(cartan.rank)
    v = tuple(int(x) for x in nu)
    while True:
        for i, x in enumerate(v):
            if x < 0:
                v = reflect(cartan, v, i)
                break
        else:
            return v


def is_dominant(nu: Sequence) -> bool:
    return all(x >= 0 for x in nu)


def is_weight_of_irrep(mu, nu, cartan: CartanData) -> bool:
    """Whether nu is a weight of the irreducible module with highest weight mu."""
    if isinstance(mu, WeightExpr):
        mu = mu._omega(cartan.rank)
    if not is_dominant(mu):
        raise ValueError("highest weight must be dominant")
    plus = dominant_rep(nu, cartan)
    diff = cartan.omega_to_root([Fraction(a) - b for a, b in zip(mu, plus)])
    return all(x.denominator == 1 and x >= 0 for x in diff)


def height(m: Sequence[int]) -> int:
    return sum(m)


def enumerate_Qplus(bound: Sequence[int]) -> list[tuple]:
    """All alpha with 0 <= alpha <= bound componentwise, lexicographically."""
    return [tuple(a) for a in itertools.product(*(range(b + 1) for b in bound))]


def enumerate_Qplus_by_height(bound: Sequence[int]) -> list[tuple]:
    return sorted(enumerate_Qplus(bound), key=lambda a: (sum(a), a))


def roots_of_height(rank: int, h: int) -> list[tuple]:
    """All m in Z_{>=0}^rank with sum h."""
    out = []
    for c in itertools.combinations_with_replacement(range(rank), h):
        m = [0] * rank
        for i in c:
            m[i] += 1
        out.append(tuple(m))
    return sorted(set(out))


def roots_up_to_height(rank: int, h: int) -> list[tuple]:
    return [m for k in range(h + 1) for m in roots_of_height(rank, k)]


def q_of_pair(value) -> Monomial:
    """Monomial q^value for an explicit exponent."""
    return qpow(value)
