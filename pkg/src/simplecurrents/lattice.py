"""Rational lattices, sublattices and finite quotient groups.

A :class:`RationalLattice` is a free abelian group with a basis and a rational
symmetric Gram matrix.  A :class:`Sublattice` is a set of rows written in the
basis of its parent, so several sublattices of one parent share a frame and
can be compared, intersected and paired directly.

Coset representatives are chosen deterministically: within each coset the
vector of smallest norm wins, and ties go to the lexicographically largest
coordinate tuple (so the rank-one quotient Z(a/2)/Za is represented by
``{0, a/2}`` rather than ``{0, -a/2}``).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from . import _matrix as mx
from .exact import frac, frac_str, lcm_many

Vector = tuple[Fraction, ...]


class LatticeError(ValueError):
    pass


def _vec(v) -> Vector:
    return tuple(frac(x) for x in v)


@dataclass(frozen=True)
class RationalLattice:
    """Z-span of a basis with rational Gram matrix ``gram[i][j] = <b_i, b_j>``."""

    gram: tuple[tuple[Fraction, ...], ...]
    label: str | None = None

    def __post_init__(self):
        g = tuple(_vec(row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if n == 0 or any(len(row) != n for row in g):
            raise LatticeError("Gram matrix must be square and nonempty")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise LatticeError("Gram matrix must be symmetric")
        if mx.determinant(g) == 0:
            raise LatticeError("Gram matrix is singular")

    @property
    def dim(self) -> int:
        return len(self.gram)

    @cached_property
    def det(self) -> Fraction:
        return mx.determinant(self.gram)

    def pair(self, x, y) -> Fraction:
        """<x, y> for coordinate vectors in this lattice's basis."""
        return mx.bilinear(x, self.gram, y)

    def norm(self, x) -> Fraction:
        return self.pair(x, x)

    def full(self) -> "Sublattice":
        """The lattice itself, viewed as a sublattice of itself."""
        return Sublattice(self, mx.identity(self.dim))

    def scaled(self, factor) -> "RationalLattice":
        f = frac(factor)
        return RationalLattice(tuple(tuple(f * x for x in row) for row in self.gram), self.label)

    def to_json(self) -> dict:
        out = {"dim": self.dim, "gram": [[frac_str(x) for x in row] for row in self.gram]}
        if self.label is not None:
            out["label"] = self.label
        return out

    @classmethod
    def from_json(cls, data: dict) -> "RationalLattice":
        gram = data["gram"]
        if "dim" in data and int(data["dim"]) != len(gram):
            raise LatticeError("dim does not match the Gram matrix")
        return cls(tuple(_vec(row) for row in gram), data.get("label"))


@dataclass(frozen=True)
class Sublattice:
    """Rows of ``basis`` (coordinates in the parent basis) span the sublattice."""

    parent: RationalLattice
    basis: tuple[Vector, ...]

    def __post_init__(self):
        b = tuple(_vec(row) for row in self.basis)
        object.__setattr__(self, "basis", b)
        if any(len(row) != self.parent.dim for row in b):
            raise LatticeError("basis vectors must live in the parent frame")
        if b:
            rank = _rank(b)
            if rank != len(b):
                raise LatticeError("sublattice basis vectors are linearly dependent")

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def is_full_rank(self) -> bool:
        return self.rank == self.parent.dim

    @cached_property
    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        g = self.parent.gram
        return tuple(tuple(mx.bilinear(x, g, y) for y in self.basis) for x in self.basis)

    @property
    def has_integral_coordinates(self) -> bool:
        return mx.is_integral(self.basis)

    def as_lattice(self, label: str | None = None) -> RationalLattice:
        return RationalLattice(self.gram, label)

    def vector(self, coords) -> Vector:
        """Parent-frame vector with the given coordinates in this sublattice's basis."""
        return tuple(mx.vec_mat([frac(c) for c in coords], [list(r) for r in self.basis]))

    def coordinates(self, v) -> Vector:
        """Coordinates of a parent-frame vector in this (full-rank) sublattice's basis."""
        self._require_full_rank()
        return tuple(mx.vec_mat(_vec(v), self._basis_inverse))

    def contains(self, v) -> bool:
        return all(c.denominator == 1 for c in self.coordinates(v))

    def contains_sublattice(self, other: "Sublattice") -> bool:
        return all(self.contains(row) for row in other.basis)

    def scaled(self, k) -> "Sublattice":
        k = frac(k)
        return Sublattice(self.parent, tuple(tuple(k * x for x in row) for row in self.basis))

    def transformed(self, unimodular) -> "Sublattice":
        """Same lattice, basis changed by an integer matrix (rows are new basis vectors)."""
        rows = [list(r) for r in self.basis]
        return Sublattice(self.parent, tuple(tuple(mx.vec_mat([frac(c) for c in row], rows)) for row in unimodular))

    def same_lattice(self, other: "Sublattice") -> bool:
        return self.contains_sublattice(other) and other.contains_sublattice(self)

    @cached_property
    def _basis_inverse(self):
        return mx.inverse([list(r) for r in self.basis])

    def _require_full_rank(self):
        if not self.is_full_rank:
            raise LatticeError("operation needs a full-rank sublattice")


def _rank(rows) -> int:
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                f = m[r][c] / m[rank][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# duals, evenness, intersections


def dual_lattice(lat: RationalLattice) -> RationalLattice:
    """Lattice spanned by the dual basis; its Gram matrix is the inverse Gram matrix."""
    try:
        inv = mx.inverse(lat.gram)
    except ZeroDivisionError as exc:
        raise LatticeError("singular Gram matrix has no dual") from exc
    label = f"dual({lat.label})" if lat.label else None
    return RationalLattice(tuple(tuple(r) for r in inv), label)


def dual_sublattice(sub: Sublattice) -> Sublattice:
    """Dual of a full-rank sublattice, in the same parent frame."""
    sub._require_full_rank()
    inv_gram = mx.inverse(sub.gram)
    rows = mx.mat_mul(inv_gram, [list(r) for r in sub.basis])
    return Sublattice(sub.parent, tuple(tuple(r) for r in rows))


def _gram_of(x) -> tuple[tuple[Fraction, ...], ...]:
    return x.gram


def is_even(lat: RationalLattice | Sublattice) -> bool:
    """All norms even integers (equivalently: even diagonal, integral off-diagonal)."""
    g = _gram_of(lat)
    n = len(g)
    return all(g[i][i].denominator == 1 and g[i][i].numerator % 2 == 0 for i in range(n)) and all(
        g[i][j].denominator == 1 for i in range(n) for j in range(n)
    )


def is_integral_lattice(lat: RationalLattice | Sublattice) -> bool:
    return mx.is_integral(_gram_of(lat))


def intersect(a: Sublattice, b: Sublattice) -> Sublattice:
    """Intersection of a sublattice with a full-rank sublattice of the same parent."""
    if a.parent != b.parent:
        raise LatticeError("sublattices live in different parents")
    b._require_full_rank()
    rel = [list(r) for r in mx.mat_mul([list(r) for r in a.basis], b._basis_inverse)]
    return Sublattice(a.parent, _integral_combinations(a, rel))


def intersect_integral(a: Sublattice) -> Sublattice:
    """Vectors of ``a`` whose parent coordinates are all integers."""
    return Sublattice(a.parent, _integral_combinations(a, [list(r) for r in a.basis]))


def _integral_combinations(a: Sublattice, rel) -> tuple[Vector, ...]:
    # integer c with c*rel integral; rel is rank(a) x n.
    d = lcm_many(x.denominator for row in rel for x in row)
    scaled = [[int(x * d) for x in row] for row in rel]
    k = len(scaled)
    if k == a.parent.dim:
        coeffs = mx.integer_kernel_mod(scaled, d)
    else:
        coeffs = _kernel_mod_rect(scaled, d)
    rows = [list(r) for r in a.basis]
    out = [tuple(mx.vec_mat([Fraction(c) for c in row], rows)) for row in coeffs]
    return tuple(out)


def _kernel_mod_rect(mat, d: int):
    # c*mat = 0 mod d for a k x n integer matrix with independent rows.
    u, dm, _ = mx.smith_normal_form(mat)
    basis = []
    for i, row in enumerate(u):
        di = dm[i][i] if i < len(dm[0]) else 0
        step = d // math.gcd(d, di) if di else d
        basis.append([step * x for x in row])
    return basis


# ---------------------------------------------------------------------------
# quotients


@dataclass(frozen=True)
class CosetGroup:
    """Finite quotient ``ambient / sub`` as a product of cyclic groups.

    Elements are tuples ``(e_1, ..., e_k)`` with ``0 <= e_i < invariant_factors[i]``.
    ``reps[i]`` is the canonical representative (parent frame) of ``elements[i]``.
    """

    invariant_factors: tuple[int, ...]
    reps: tuple[Vector, ...]
    elements: tuple[tuple[int, ...], ...]
    _class_map: tuple[tuple[int, ...], ...] = field(repr=False, default=())
    _ambient_inverse: tuple[Vector, ...] = field(repr=False, default=())

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    def __len__(self) -> int:
        return self.order

    def element_of(self, v) -> tuple[int, ...]:
        """Group element containing the parent-frame vector ``v``."""
        coords = mx.vec_mat(_vec(v), [list(r) for r in self._ambient_inverse])
        if any(c.denominator != 1 for c in coords):
            raise LatticeError("vector is not in the ambient lattice")
        ints = [int(c) for c in coords]
        out = []
        for col, d in zip(self._class_map, self.invariant_factors):
            out.append(sum(x * y for x, y in zip(ints, col)) % d)
        return tuple(out)

    def index_of(self, v) -> int:
        return self.elements.index(self.element_of(v))

    def add(self, e1, e2) -> tuple[int, ...]:
        return tuple((a + b) % d for a, b, d in zip(e1, e2, self.invariant_factors))

    def add_index(self, i: int, j: int) -> int:
        return self.elements.index(self.add(self.elements[i], self.elements[j]))

    def neg_index(self, i: int) -> int:
        return self.elements.index(tuple((-a) % d for a, d in zip(self.elements[i], self.invariant_factors)))

    def rep(self, e) -> Vector:
        return self.reps[self.elements.index(tuple(e))]


def _as_sublattice(x) -> Sublattice:
    return x.full() if isinstance(x, RationalLattice) else x


def quotient(ambient: RationalLattice | Sublattice, sub: Sublattice) -> CosetGroup:
    """The finite group ambient/sub with canonical minimal-norm representatives."""
    amb = _as_sublattice(ambient)
    if sub.parent != amb.parent:
        raise LatticeError("sublattice and ambient live in different parents")
    if sub.rank != amb.rank:
        raise LatticeError("sublattice must have full rank in the ambient lattice")
    amb_rows = [list(r) for r in amb.basis]
    if amb.rank == amb.parent.dim:
        amb_inv = amb._basis_inverse
        rel = mx.mat_mul([list(r) for r in sub.basis], amb_inv)
    else:
        rel, amb_inv = _relative_coordinates(sub, amb)
    if not mx.is_integral(rel):
        raise LatticeError("sublattice is not contained in the ambient lattice")
    rel_int = [[int(x) for x in row] for row in rel]
    _, dmat, v = mx.smith_normal_form(rel_int)
    n = len(rel_int)
    diag = [dmat[i][i] for i in range(n)]
    if any(d == 0 for d in diag):
        raise LatticeError("sublattice is rank deficient")
    keep = [i for i, d in enumerate(diag) if d != 1]
    factors = tuple(diag[i] for i in keep)
    class_map = tuple(tuple(v[r][i] for r in range(n)) for i in keep)
    v_inv = mx.inverse([[Fraction(x) for x in row] for row in v])
    elements = tuple(itertools.product(*[range(d) for d in factors]))
    reps = []
    sub_gram = sub.gram
    for e in elements:
        y = [Fraction(0)] * n
        for pos, i in enumerate(keep):
            y[i] = Fraction(e[pos])
        ambient_coords = mx.vec_mat(y, v_inv)  # integer coordinates in the ambient basis
        vec = mx.vec_mat(ambient_coords, amb_rows)
        reps.append(min_norm_in_coset(vec, sub, _sub_gram=sub_gram))
    return CosetGroup(
        invariant_factors=factors,
        reps=tuple(reps),
        elements=elements,
        _class_map=class_map,
        _ambient_inverse=tuple(tuple(r) for r in amb_inv),
    )


def _relative_coordinates(sub: Sublattice, amb: Sublattice):
    # Non-full-rank ambient: solve through the Gram matrix of amb.
    g_inv = mx.inverse(amb.gram)
    amb_rows = [list(r) for r in amb.basis]
    pg = amb.parent.gram

    def coords(vec):
        pairings = [mx.bilinear(vec, pg, b) for b in amb_rows]
        return mx.vec_mat(pairings, g_inv)

    rel = [coords(list(r)) for r in sub.basis]
    # right inverse of the basis: x -> coords(x) is linear, expressed as matrix on parent coords
    n = amb.parent.dim
    cols = [coords([Fraction(int(i == j)) for j in range(n)]) for i in range(n)]
    return rel, cols


def min_norm_in_coset(v, sub: Sublattice, *, _sub_gram=None) -> Vector:
    """Minimal-norm vector in ``v + sub`` (ties: lexicographically largest coordinates).

    Requires the pairing to be positive definite on ``sub``.
    """
    v = _vec(v)
    rows = [list(r) for r in sub.basis]
    k = len(rows)
    if k == 0:
        return v
    g = _sub_gram or sub.gram
    pg = sub.parent.gram
    # Minimize <v + c*B, v + c*B> = <v,v> + 2 c.w + c G c^T with w_i = <v, b_i>.
    w = [mx.bilinear(v, pg, b) for b in rows]
    try:
        g_inv = mx.inverse(g)
    except ZeroDivisionError as exc:
        raise LatticeError("degenerate sublattice") from exc
    if any(g_inv[i][i] <= 0 for i in range(k)):
        raise LatticeError("pairing is not positive definite on the sublattice")
    center = [-x for x in mx.vec_mat(w, g_inv)]  # real minimizer
    c0 = [round(x) for x in center]

    def value(c):
        return 2 * sum(ci * wi for ci, wi in zip(c, w)) + mx.bilinear(c, g, c)

    best_bound = value(c0) - value(center)  # >= 0: excess over the real minimum
    # (c - center) G (c - center)^T <= R  implies  |c_i - center_i| <= sqrt(R * Ginv_ii)
    radii = [math.isqrt(math.floor(best_bound * g_inv[i][i])) + 1 for i in range(k)]
    scale = lcm_many([x.denominator for row in g for x in row] + [x.denominator for x in w])
    g_int = np.array([[int(x * scale) for x in row] for row in g], dtype=object)
    w_int = np.array([int(x * scale) for x in w], dtype=object)
    ranges = [range(math.floor(center[i]) - radii[i], math.ceil(center[i]) + radii[i] + 1) for i in range(k)]
    best_val = None
    best_vecs: list[Vector] = []
    for chunk in _chunks(itertools.product(*ranges), 4096):
        arr = np.array(chunk, dtype=object)
        vals = 2 * arr.dot(w_int) + (arr.dot(g_int) * arr).sum(axis=1)
        m = vals.min()
        if best_val is None or m < best_val:
            best_val = m
            best_vecs = []
        if m == best_val:
            for idx in np.nonzero(vals == m)[0]:
                c = [Fraction(int(x)) for x in arr[idx]]
                best_vecs.append(tuple(a + b for a, b in zip(v, mx.vec_mat(c, rows))))
    return max(best_vecs)


def _chunks(it: Iterator, size: int) -> Iterator[list]:
    while True:
        block = list(itertools.islice(it, size))
        if not block:
            return
        yield block


def vectors_up_to_norm(lat: RationalLattice, bound) -> list[tuple[int, ...]]:
    """Integer coordinate vectors with norm at most ``bound`` (positive definite only)."""
    bound = frac(bound)
    g_inv = mx.inverse(lat.gram)
    radii = [math.isqrt(math.floor(bound * g_inv[i][i])) for i in range(lat.dim)]
    out = []
    for c in itertools.product(*[range(-r, r + 1) for r in radii]):
        if lat.norm(c) <= bound:
            out.append(c)
    return out


# ---------------------------------------------------------------------------
# integrality condition for simple-current extensions


def check_integrality_condition(
    l1: Sublattice, l0: Sublattice, p: RationalLattice | Sublattice
) -> bool:
    """Integrality test for extending by ``l1`` over the even lattice ``l0``.

    True iff ``l1`` is integral, ``<lambda, beta>`` is an integer for every
    ``lambda`` in ``p`` and ``beta`` in ``l1``, and ``<alpha, beta>`` is even for
    every ``alpha`` in ``l0`` and ``beta`` in ``l1``.
    """
    p = _as_sublattice(p)
    if not (l1.parent == l0.parent == p.parent):
        raise LatticeError("all lattices must share one parent frame")
    if l1.is_full_rank:
        if not l1.contains_sublattice(l0):
            raise LatticeError("l0 must be contained in l1")
    elif not _span_contains(l1, l0):
        raise LatticeError("l0 must be contained in l1")
    g = l1.parent.gram
    if not is_integral_lattice(l1):
        return False
    for lam in p.basis:
        for beta in l1.basis:
            if mx.bilinear(lam, g, beta).denominator != 1:
                return False
    for alpha in l0.basis:
        for beta in l1.basis:
            val = mx.bilinear(alpha, g, beta)
            if val.denominator != 1 or val.numerator % 2:
                return False
    return True


def _span_contains(big: Sublattice, small: Sublattice) -> bool:
    rows = [list(r) for r in big.basis]
    for v in small.basis:
        stacked = rows + [list(v)]
        if _rank(stacked) != len(rows):
            return False
        # solve via least squares on the Gram matrix, then check integrality
        g = mx.mat_mul(rows, mx.transpose(rows))
        rhs = [sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in rows]
        coeffs = mx.vec_mat(rhs, mx.inverse(g))
        if any(c.denominator != 1 for c in coeffs):
            return False
    return True

