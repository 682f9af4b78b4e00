"""Exact root data for the simple Lie types A through G.

Roots are realized in a standard orthonormal ambient space and the invariant
form is rescaled so that the highest root has square length 2.  Everything is
kept as Fractions.

Labeling: D and E follow Bourbaki.  For B and C the simple roots are listed in
the reverse of the Bourbaki order, so that the node whose mark equals 1 (the
node carrying the level-one simple current) is the last node for B_n and the
first node for C_n.  This is the labeling under which "minimal iff the mark
is 1" reproduces the usual minimal-weight table node by node.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ._matrix import inverse as _inverse
from .exact import frac

Matrix = tuple[tuple[Fraction, ...], ...]

RANK_RULES = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 3,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


class RootSystemError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class SimpleLieType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in RANK_RULES:
            raise RootSystemError(f"unknown family {self.family!r}")
        if not isinstance(self.rank, int) or not RANK_RULES[self.family](self.rank):
            raise RootSystemError(f"rank {self.rank} is not valid for family {self.family}")

    @classmethod
    def parse(cls, text: str) -> "SimpleLieType":
        """Read names like ``"A5"``, ``"e8"`` or ``"D_4"``."""
        m = re.fullmatch(r"\s*([A-Ga-g])_?(\d+)\s*", str(text))
        if not m:
            raise RootSystemError(f"cannot parse Lie type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class RootSystemData:
    lie_type: SimpleLieType
    simple_roots: Matrix  # ambient coordinates, one row per simple root
    form_scale: Fraction  # (x, y) = form_scale * dot(x, y)
    gram: Matrix  # (alpha_i, alpha_j)
    cartan: tuple[tuple[int, ...], ...]  # 2(alpha_i, alpha_j)/(alpha_j, alpha_j)
    marks: tuple[int, ...]
    comarks: tuple[int, ...]
    dual_coxeter: int
    fund_weights: Matrix  # row i: lambda_i in the simple-root basis
    fund_coweights: Matrix  # row i: h_i in the simple-coroot basis
    highest_root: tuple[int, ...]
    positive_roots: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return self.lie_type.rank

    @property
    def coroot_gram(self) -> Matrix:
        """(alpha_i^vee, alpha_j^vee) under the normalized form."""
        g = self.gram
        n = self.rank
        return tuple(
            tuple(4 * g[i][j] / (g[i][i] * g[j][j]) for j in range(n)) for i in range(n)
        )

    def root_in_coroot_basis(self, i: int) -> tuple[Fraction, ...]:
        """alpha_i written in the simple-coroot basis (alpha_i = |alpha_i|^2/2 alpha_i^vee)."""
        n = self.rank
        return tuple(self.gram[i][i] / 2 if j == i else Fraction(0) for j in range(n))

    def pairing(self, x, y) -> Fraction:
        """Normalized form of two vectors given in the simple-coroot basis."""
        cg = self.coroot_gram
        n = self.rank
        return sum((frac(x[i]) * cg[i][j] * frac(y[j]) for i in range(n) for j in range(n)), Fraction(0))

    def coweight_in_weight_basis(self, i: int) -> tuple[Fraction, ...]:
        """h_i expanded in the fundamental weights (through the form identification)."""
        n = self.rank
        # (h_i, alpha_j^vee) is the coefficient of lambda_j.
        h = self.fund_coweights[i]
        cg = self.coroot_gram
        return tuple(sum((h[k] * cg[k][j] for k in range(n)), Fraction(0)) for j in range(n))


def _unit(dim: int, i: int, scale=1) -> list[Fraction]:
    v = [Fraction(0)] * dim
    v[i] = frac(scale)
    return v


def _ambient_simple_roots(t: SimpleLieType) -> list[list[Fraction]]:
    f, n = t.family, t.rank
    half = Fraction(1, 2)
    if f == "A":
        return [[Fraction(1) if k == i else Fraction(-1) if k == i + 1 else Fraction(0) for k in range(n + 1)] for i in range(n)]
    if f in "BCD":
        diff = [[Fraction(1) if k == i else Fraction(-1) if k == i + 1 else Fraction(0) for k in range(n)] for i in range(n - 1)]
        if f == "B":
            roots = diff + [_unit(n, n - 1)]
            return roots[::-1]
        if f == "C":
            roots = diff + [_unit(n, n - 1, 2)]
            return roots[::-1]
        last = _unit(n, n - 2)
        last[n - 1] = Fraction(1)
        return diff + [last]
    if f == "E":
        dim = 8
        a1 = [half, -half, -half, -half, -half, -half, -half, half]
        a2 = _unit(dim, 0)
        a2[1] = Fraction(1)
        roots = [a1, a2]
        for i in range(n - 2):
            r = [Fraction(0)] * dim
            r[i] = Fraction(-1)
            r[i + 1] = Fraction(1)
            roots.append(r)
        # Bourbaki order: alpha_3 = e2 - e1, alpha_4 = e3 - e2, ...
        return roots
    if f == "F":
        return [
            [Fraction(0), Fraction(1), Fraction(-1), Fraction(0)],
            [Fraction(0), Fraction(0), Fraction(1), Fraction(-1)],
            [Fraction(0), Fraction(0), Fraction(0), Fraction(1)],
            [half, -half, -half, -half],
        ]
    if f == "G":
        return [
            [Fraction(1), Fraction(-1), Fraction(0)],
            [Fraction(-2), Fraction(1), Fraction(1)],
        ]
    raise RootSystemError(str(t))


def _dot(x, y) -> Fraction:
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


def _positive_roots(cartan: list[list[int]]) -> list[tuple[int, ...]]:
    """Positive roots as simple-root coefficient vectors, by raising through root strings."""
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                # <beta, alpha_i^vee> = sum_j beta_j cartan[j][i]
                pairing = sum(beta[j] * cartan[j][i] for j in range(n))
                # length of the i-string below beta
                down = 0
                probe = list(beta)
                while True:
                    probe[i] -= 1
                    if tuple(probe) in roots:
                        down += 1
                    else:
                        break
                up = down - pairing
                if up > 0:
                    cand = list(beta)
                    cand[i] += 1
                    cand = tuple(cand)
                    if cand not in roots:
                        roots.add(cand)
                        nxt.append(cand)
        frontier = nxt
    return sorted(roots, key=lambda r: (sum(r), r))


@lru_cache(maxsize=None)
def build_root_system(t: SimpleLieType) -> RootSystemData:
    """Construct the exact root data for a simple Lie type."""
    if isinstance(t, str):
        t = SimpleLieType.parse(t)
    raw = _ambient_simple_roots(t)
    n = t.rank
    raw_gram = [[_dot(raw[i], raw[j]) for j in range(n)] for i in range(n)]
    cartan = [[2 * raw_gram[i][j] / raw_gram[j][j] for j in range(n)] for i in range(n)]
    if any(c.denominator != 1 for row in cartan for c in row):
        raise RootSystemError("non-integral Cartan matrix")
    cartan_int = [[int(c) for c in row] for row in cartan]
    pos = _positive_roots(cartan_int)
    theta = max(pos, key=lambda r: sum(r))
    theta_vec = [sum((theta[i] * raw[i][k] for i in range(n)), Fraction(0)) for k in range(len(raw[0]))]
    scale = Fraction(2) / _dot(theta_vec, theta_vec)
    gram = [[scale * raw_gram[i][j] for j in range(n)] for i in range(n)]
    marks = tuple(theta)
    comarks = tuple(int(marks[i] * gram[i][i] / 2) for i in range(n))
    fund_weights = _inverse([[Fraction(c) for c in row] for row in cartan_int])
    transposed = [[Fraction(cartan_int[j][i]) for j in range(n)] for i in range(n)]
    fund_coweights = _inverse(transposed)
    return RootSystemData(
        lie_type=t,
        simple_roots=tuple(tuple(r) for r in raw),
        form_scale=scale,
        gram=tuple(tuple(r) for r in gram),
        cartan=tuple(tuple(r) for r in cartan_int),
        marks=marks,
        comarks=comarks,
        dual_coxeter=1 + sum(comarks),
        fund_weights=tuple(tuple(r) for r in fund_weights),
        fund_coweights=tuple(tuple(r) for r in fund_coweights),
        highest_root=tuple(theta),
        positive_roots=tuple(pos),
    )


def _as_type(t) -> SimpleLieType:
    return SimpleLieType.parse(t) if isinstance(t, str) else t


def minimal_weights(t) -> list[int]:
    """1-based indices i whose mark a_i equals 1."""
    data = build_root_system(_as_type(t))
    return [i + 1 for i, a in enumerate(data.marks) if a == 1]


def coweight_norm(t, i: int) -> Fraction:
    """(h_i, h_i) under the normalized form; ``i`` is 1-based."""
    data = build_root_system(_as_type(t))
    if not 1 <= i <= data.rank:
        raise RootSystemError(f"index {i} out of range for {data.lie_type}")
    h = data.fund_coweights[i - 1]
    return data.pairing(h, h)


def coroot_lattice_membership(t, v) -> bool:
    """True iff the coweight ``v`` (coroot coordinates) lies in the coroot lattice."""
    data = build_root_system(_as_type(t))
    if len(v) != data.rank:
        raise RootSystemError(f"expected {data.rank} coordinates, got {len(v)}")
    return all(frac(x).denominator == 1 for x in v)


def coweight(t, i: int) -> tuple[Fraction, ...]:
    """Fundamental coweight h_i (1-based) in the simple-coroot basis."""
    data = build_root_system(_as_type(t))
    if not 1 <= i <= data.rank:
        raise RootSystemError(f"index {i} out of range for {data.lie_type}")
    return data.fund_coweights[i - 1]
