"""Grading form, commutator maps and cocycles for simple-current extensions.

Every scalar handled here is a root of unity ``exp(pi*i*q)`` with ``q``
rational.  Tables store the exponent ``q`` reduced into ``[0, 2)`` so that
products become sums and equality is exact; :func:`as_scalar` turns an
exponent into an exact cyclotomic number when a value is wanted.

All vectors live in one ambient frame whose pairing is given by a
:class:`~simplecurrents.lattice.RationalLattice` called ``form``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import _matrix as mx
from .exact import Scalar, frac, frac_str, phase_exponent, root_of_unity
from .lattice import CosetGroup, LatticeError, RationalLattice, Sublattice

Vector = tuple[Fraction, ...]
PhaseMap = Callable[[Vector, Vector], Fraction]


class CocycleError(ValueError):
    pass


def mod2(q) -> Fraction:
    q = frac(q)
    return q - 2 * (q.numerator // (2 * q.denominator))


def as_scalar(q) -> Scalar:
    """exp(pi*i*q) as an exact number."""
    return root_of_unity(q)


def _v(x) -> Vector:
    return tuple(frac(c) for c in x)


def _add(x, y) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def _sub(x, y) -> Vector:
    return tuple(a - b for a, b in zip(x, y))


@dataclass(frozen=True)
class GradedIndex:
    """A pair (alpha, lam): a deformation direction and an H-weight."""

    alpha: Vector
    lam: Vector

    def __post_init__(self):
        object.__setattr__(self, "alpha", _v(self.alpha))
        object.__setattr__(self, "lam", _v(self.lam))
        if len(self.alpha) != len(self.lam):
            raise CocycleError("alpha and lam must have the same dimension")

    def __add__(self, other: "GradedIndex") -> "GradedIndex":
        return GradedIndex(_add(self.alpha, other.alpha), _add(self.lam, other.lam))

    @classmethod
    def zero(cls, dim: int) -> "GradedIndex":
        z = (Fraction(0),) * dim
        return cls(z, z)


# ---------------------------------------------------------------------------
# grading form and commutator map


def eta(a: GradedIndex, b: GradedIndex, form: RationalLattice) -> Fraction:
    """-<a1,a2> - <a1,l2> - <a2,l1>, reduced into [0, 2)."""
    p = form.pair
    return mod2(-p(a.alpha, b.alpha) - p(a.alpha, b.lam) - p(b.alpha, a.lam))


def comm_exponent(a: GradedIndex, b: GradedIndex, form: RationalLattice) -> Fraction:
    p = form.pair
    return mod2(p(a.alpha, b.lam) - p(b.alpha, a.lam))


def comm_C(a: GradedIndex, b: GradedIndex, form: RationalLattice) -> Scalar:
    """exp((<a1,l2> - <a2,l1>) pi i), exactly."""
    return as_scalar(comm_exponent(a, b, form))


# ---------------------------------------------------------------------------
# the square-root table


def aligned_bases(lat: Sublattice, sub: Sublattice) -> tuple[tuple[Vector, ...], tuple[Vector, ...], tuple[int, ...]]:
    """Bases (b_i) of ``lat`` and (a_i) of ``sub`` with a_i = m_i * b_i.

    ``sub`` must be a full-rank sublattice of ``lat`` (same parent frame).
    """
    if lat.parent != sub.parent:
        raise LatticeError("different parent frames")
    if sub.rank != lat.rank:
        raise LatticeError("sublattice rank differs")
    rel = [_coords_in(lat, row) for row in sub.basis]
    if not mx.is_integral(rel):
        raise LatticeError("sublattice is not contained in the lattice")
    u, d, v = mx.smith_normal_form([[int(x) for x in row] for row in rel])
    v_inv = mx.inverse([[Fraction(x) for x in row] for row in v])
    lat_rows = [list(r) for r in lat.basis]
    big = tuple(tuple(mx.vec_mat(row, lat_rows)) for row in v_inv)
    mult = tuple(d[i][i] for i in range(len(d)))
    small = tuple(tuple(m * x for x in b) for m, b in zip(mult, big))
    return big, small, mult


def _coords_in(lat: Sublattice, vec) -> list[Fraction]:
    rows = [list(r) for r in lat.basis]
    g = mx.mat_mul(rows, mx.transpose(rows))
    rhs = [sum((a * frac(b) for a, b in zip(r, vec)), Fraction(0)) for r in rows]
    coords = mx.vec_mat(rhs, mx.inverse(g))
    back = mx.vec_mat(coords, rows)
    if tuple(back) != _v(vec):
        raise LatticeError("vector is not in the span of the lattice")
    return coords


@dataclass(frozen=True)
class BilinearRootTable:
    """A bilinear phase A1 on L with A1^2 = A0 on an aligned basis of L0.

    ``exponents[i][j]`` is q with A1(b_i, b_j) = exp(pi*i*q).
    """

    basis: tuple[Vector, ...]
    sub_basis: tuple[Vector, ...]
    multipliers: tuple[int, ...]
    exponents: tuple[tuple[Fraction, ...], ...]

    @cached_property
    def _solver(self):
        rows = [list(r) for r in self.basis]
        return rows, mx.inverse(mx.mat_mul(rows, mx.transpose(rows))), {}

    def coordinates(self, x) -> tuple[Fraction, ...]:
        rows, g_inv, memo = self._solver
        x = _v(x)
        coords = memo.get(x)
        if coords is None:
            rhs = [sum((a * b for a, b in zip(r, x)), Fraction(0)) for r in rows]
            coords = tuple(mx.vec_mat(rhs, g_inv))
            if any(c.denominator != 1 for c in coords) or tuple(mx.vec_mat(coords, rows)) != x:
                raise CocycleError(f"{x} is not in the lattice")
            memo[x] = coords
        return coords

    def a1_exponent(self, x, y) -> Fraction:
        cx, cy = self.coordinates(x), self.coordinates(y)
        n = len(self.basis)
        q = self.exponents
        return mod2(sum((cx[i] * cy[j] * q[i][j] for i in range(n) if cx[i] for j in range(n) if cy[j]), Fraction(0)))

    def a1(self, x, y) -> Scalar:
        return as_scalar(self.a1_exponent(x, y))

    def c1_exponent(self, x, y) -> Fraction:
        return mod2(self.a1_exponent(x, y) - self.a1_exponent(y, x))

    def c1(self, x, y) -> Scalar:
        return as_scalar(self.c1_exponent(x, y))

    @classmethod
    def trivial(cls, basis: Sequence[Vector]) -> "BilinearRootTable":
        n = len(basis)
        zero = tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n))
        return cls(tuple(_v(b) for b in basis), tuple(_v(b) for b in basis), (1,) * n, zero)


def build_A1(
    basis: Sequence[Sequence],
    sub_basis: Sequence[Sequence],
    a0: PhaseMap,
) -> BilinearRootTable:
    """Square-root table for the phase ``a0`` (given as an exponent map on L0).

    ``sub_basis[i]`` must be an integer multiple of ``basis[i]``.  On each pair
    of basis vectors the principal root is used:
    A1(b_i, b_j) = exp(pi*i*q / (2 m_i m_j)) when A0(a_i, a_j) = exp(pi*i*q).
    """
    basis = tuple(_v(b) for b in basis)
    sub_basis = tuple(_v(a) for a in sub_basis)
    if len(basis) != len(sub_basis):
        raise CocycleError("bases have different lengths")
    mult = []
    for b, a in zip(basis, sub_basis):
        m = _integer_multiple(a, b)
        if m is None:
            raise CocycleError("bases are not aligned: each L0 vector must be an integer multiple of its L partner")
        mult.append(m)
    n = len(basis)
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            q = mod2(a0(sub_basis[i], sub_basis[j]))
            row.append(q / (2 * mult[i] * mult[j]))
        table.append(tuple(row))
    return BilinearRootTable(basis, sub_basis, tuple(mult), tuple(table))


def _integer_multiple(a: Vector, b: Vector) -> int | None:
    ratio = None
    for x, y in zip(a, b):
        if y == 0:
            if x != 0:
                return None
            continue
        r = x / y
        if ratio is None:
            ratio = r
        elif r != ratio:
            return None
    if ratio is None or ratio.denominator != 1 or ratio == 0:
        return None
    return int(ratio)


def c0_exponent(a0: PhaseMap, x, y) -> Fraction:
    """Exponent of C0(x, y) = A0(x, y) A0(y, x)^{-1}."""
    return mod2(a0(x, y) - a0(y, x))


def bilinear_phase(form: RationalLattice, table_exponents) -> PhaseMap:
    """Phase map (x, y) -> sum_ij x_i y_j q_ij for coordinates in ``form``'s frame."""
    tab = [[frac(q) for q in row] for row in table_exponents]

    def a0(x, y) -> Fraction:
        return mod2(mx.bilinear(x, tab, y))

    return a0


# ---------------------------------------------------------------------------
# the three-cocycle


def h_exponent(i: int, j: int, k: int, group: CosetGroup, form: RationalLattice, a1: BilinearRootTable) -> Fraction:
    """Exponent of h(i, j, k) = exp(-<mu, l_k> pi i) C1(mu, l_k)^2, mu = l_i + l_j - l_{i+j}."""
    reps = group.reps
    mu = _sub(_add(reps[i], reps[j]), reps[group.add_index(i, j)])
    return mod2(-form.pair(mu, reps[k]) + 2 * a1.c1_exponent(mu, reps[k]))


def h_cocycle(i: int, j: int, k: int, group: CosetGroup, form: RationalLattice, a1: BilinearRootTable) -> Scalar:
    return as_scalar(h_exponent(i, j, k, group, form, a1))


def h_table(group: CosetGroup, form: RationalLattice, a1: BilinearRootTable) -> list[list[list[Fraction]]]:
    """Exponents h[i][j][k] over all triples of group indices."""
    n = group.order
    return [[[h_exponent(i, j, k, group, form, a1) for k in range(n)] for j in range(n)] for i in range(n)]


def verify_2cocycle_slice(table, k: int, group: CosetGroup) -> bool:
    """h(i,j,k) h(i,j+r,k)^-1 h(i+j,r,k) h(j,r,k)^-1 = 1 for all i, j, r."""
    n = group.order
    add = group.add_index
    for i, j, r in itertools.product(range(n), repeat=3):
        total = table[i][j][k] - table[i][add(j, r)][k] + table[add(i, j)][r][k] - table[j][r][k]
        if mod2(total) != 0:
            return False
    return True


def first_2cocycle_failure(table, group: CosetGroup):
    """First (i, j, r, k) violating the slice condition, or None."""
    n = group.order
    add = group.add_index
    for k in range(n):
        for i, j, r in itertools.product(range(n), repeat=3):
            total = table[i][j][k] - table[i][add(j, r)][k] + table[add(i, j)][r][k] - table[j][r][k]
            if mod2(total) != 0:
                return (i, j, r, k)
    return None


def verify_A0_cocycle(a0: PhaseMap, triples: Iterable[tuple]) -> bool:
    """A0(a+b, c) A0(a, b) = A0(a, b+c) A0(b, c) on every supplied triple."""
    for x, y, z in triples:
        x, y, z = _v(x), _v(y), _v(z)
        lhs = a0(_add(x, y), z) + a0(x, y)
        rhs = a0(x, _add(y, z)) + a0(y, z)
        if mod2(lhs - rhs) != 0:
            return False
    return True


def bar_C_exponent(a: GradedIndex, b: GradedIndex, form: RationalLattice, a1: BilinearRootTable) -> Fraction:
    return mod2(comm_exponent(a, b, form) + a1.c1_exponent(a.alpha, b.alpha))


def bar_C(a: GradedIndex, b: GradedIndex, form: RationalLattice, a1: BilinearRootTable) -> Scalar:
    """C(a, b) C1(a1, a2), exactly."""
    return as_scalar(bar_C_exponent(a, b, form, a1))


def commutator_property_failures(exponent_map, elements: Sequence, add) -> list[str]:
    """Check C(a,a)=1, C(a,b)C(b,a)=1 and C(a+b,c)=C(a,c)C(b,c) exhaustively.

    ``exponent_map(a, b)`` returns the exponent q of C(a, b); ``add`` adds two
    elements.  Returns human-readable descriptions of the violated clauses.
    """
    failures = []
    for a in elements:
        if mod2(exponent_map(a, a)) != 0:
            failures.append(f"C(a,a) != 1 at {a}")
            break
    for a, b in itertools.product(elements, repeat=2):
        if mod2(exponent_map(a, b) + exponent_map(b, a)) != 0:
            failures.append(f"C(a,b)C(b,a) != 1 at {a}, {b}")
            break
    for a, b, c in itertools.product(elements, repeat=3):
        if mod2(exponent_map(add(a, b), c) - exponent_map(a, c) - exponent_map(b, c)) != 0:
            failures.append(f"C(a+b,c) != C(a,c)C(b,c) at {a}, {b}, {c}")
            break
    return failures


def eta_property_failures(elements: Sequence[GradedIndex], form: RationalLattice) -> list[str]:
    """Symmetry and additivity of the grading form, exhaustively."""
    failures = []
    for a, b in itertools.product(elements, repeat=2):
        if eta(a, b, form) != eta(b, a, form):
            failures.append(f"eta not symmetric at {a}, {b}")
            break
    for a, b, c in itertools.product(elements, repeat=3):
        if eta(a + b, c, form) != mod2(eta(a, c, form) + eta(b, c, form)):
            failures.append(f"eta not additive at {a}, {b}, {c}")
            break
    return failures


def pi_commutation_exponent(a1_vec, a2_vec, beta, a0: PhaseMap, table: BilinearRootTable) -> Fraction:
    """Exponent of the scalar that must vanish for the corrected isomorphisms to commute.

    With pi_a(u) = C1(beta, a) pibar_a(u) on the beta-sector, the product
    pi_{a1} pi_{a2} pi_{a1}^{-1} pi_{a2}^{-1} on the beta-sector is the phase
    C1(beta - a2, a1) C1(beta, a2) C0(a2, a1) C1(a2, beta - a1) C1(a1, beta).
    """
    x, y, b = _v(a1_vec), _v(a2_vec), _v(beta)
    c1 = table.c1_exponent
    return mod2(
        c1(_sub(b, y), x) + c1(b, y) + c0_exponent(a0, y, x) + c1(y, _sub(b, x)) + c1(x, b)
    )


# ---------------------------------------------------------------------------
# export


def exponent_json(q) -> dict:
    q = mod2(q)
    return {"numerator": q.numerator, "denominator": q.denominator}


def scalar_exponent_json(x: Scalar) -> dict:
    q = phase_exponent(x)
    if q is None:
        raise CocycleError("value is not a root of unity")
    return exponent_json(q)


def h_table_json(table) -> str:
    return json.dumps([[[exponent_json(q) for q in row] for row in plane] for plane in table])


def phase_table_json(exponent_map, elements: Sequence) -> str:
    return json.dumps([[exponent_json(exponent_map(a, b)) for b in elements] for a in elements])


def exponent_str(q) -> str:
    return frac_str(mod2(q))
