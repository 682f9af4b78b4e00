"""The extension classifier.

An :class:`ExtensionSpec` names a base algebra (a lattice algebra ``V_E`` for an
even lattice ``E``, or the affine vacuum algebra ``L(level, 0)``) and a lattice
``L`` of deformation directions.  :func:`classify` computes the sublattice
``L0`` of directions whose deformation returns the algebra itself, the grading
group ``L/L0`` (or ``L1/L0`` for a chosen intermediate lattice ``L1``), the
summands, and the kind of algebra the sum carries.

Frames.  Affine specs work in simple-coroot coordinates with the pairing
``<x, y> = level * (x, y)``; the weights of the base algebra form the root
lattice, embedded through that pairing.  Lattice specs work in the basis of
``E`` with its own Gram matrix.

The kind is decided as follows.  If ``L1`` is integral, pairs integrally with
the weights of the base, and pairs evenly with ``L0``, the sum over ``L1`` is
a vertex superalgebra whose parity sign is ``(-1)^{<a, b>}``.  It is reported
as a vertex operator algebra when that sign is trivial, as a superalgebra
when the sign equals ``(-1)^{p(a) p(b)}`` for the parity ``p(a) = <a, a> mod 2``,
and otherwise (or when the integrality test fails) as an abelian
intertwining algebra, which is always available.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import _matrix as mx
from .cocycle import (
    BilinearRootTable,
    GradedIndex,
    aligned_bases,
    bar_C_exponent,
    build_A1,
    eta,
    first_2cocycle_failure,
    h_table,
    mod2,
)
from .currents import ModuleLabel, deform_label, lowest_weight, sigma_order
from .exact import frac, frac_str
from .lattice import (
    CosetGroup,
    LatticeError,
    RationalLattice,
    Sublattice,
    check_integrality_condition,
    dual_sublattice,
    intersect,
    intersect_integral,
    is_even,
    quotient,
)
from .rootsys import SimpleLieType, build_root_system, coweight

Vector = tuple[Fraction, ...]

VOA = "vertex-operator-algebra"
SUPER_VOA = "vertex-operator-superalgebra"
AIA = "abelian-intertwining-algebra"

DERIVED_RULE_NOTE = "L0 = L meet coroot lattice: derived rule, validated on the four classical examples"

# Default deformation directions per family (minimal nodes, 1-based).
DEFAULT_NODES = {
    "A": lambda n: [1],
    "B": lambda n: [n],
    "C": lambda n: [1],
    "D": lambda n: [1, n - 1, n],
    "E": lambda n: {6: [1], 7: [7], 8: []}[n],
    "F": lambda n: [],
    "G": lambda n: [],
}


class ExtensionError(ValueError):
    """The extension data is malformed."""


class InvariantViolation(RuntimeError):
    """A structural invariant failed; this signals an inconsistent spec or a bug."""


def _vec(v) -> Vector:
    return tuple(frac(x) for x in v)


# ---------------------------------------------------------------------------
# specs


@dataclass(frozen=True)
class ExtensionSpec:
    """Base algebra plus deformation directions ``L`` (and optionally ``L1``)."""

    form: RationalLattice
    directions: Sublattice
    weights: Sublattice
    even: Sublattice | None = None
    lie_type: SimpleLieType | None = None
    level: int = 0
    intermediate: Sublattice | None = None

    @property
    def is_affine(self) -> bool:
        return self.lie_type is not None

    @classmethod
    def affine(cls, lie_type, level: int, directions=None, intermediate=None) -> "ExtensionSpec":
        """Affine base ``L(level, 0)``.

        ``directions`` and ``intermediate`` are lists whose entries are node
        indices (meaning the fundamental coweight) or coroot-coordinate vectors.
        The default directions are the minimal coweights used in the classical
        examples: ``h_1`` for A and C, ``h_n`` for B, ``h_1, h_{n-1}, h_n`` for D.
        """
        t = lie_type if isinstance(lie_type, SimpleLieType) else SimpleLieType.parse(lie_type)
        if not isinstance(level, int) or level < 1:
            raise ExtensionError("level must be a positive integer")
        data = build_root_system(t)
        form = RationalLattice(tuple(tuple(level * x for x in row) for row in data.coroot_gram), f"{t} level {level}")
        if directions is None:
            directions = DEFAULT_NODES[t.family](t.rank)
        d = Sublattice(form, _direction_rows(t, directions))
        weights = Sublattice(
            form, tuple(tuple(x / level for x in data.root_in_coroot_basis(i)) for i in range(t.rank))
        )
        inter = None if intermediate is None else Sublattice(form, _direction_rows(t, intermediate))
        return cls(form, d, weights, None, t, level, inter)

    @classmethod
    def lattice(cls, gram, directions, intermediate=None) -> "ExtensionSpec":
        """Lattice base ``V_E`` with ``E`` given by ``gram``; direction rows in the basis of ``E``."""
        form = RationalLattice(tuple(_vec(r) for r in gram))
        even = form.full()
        if not is_even(even):
            raise ExtensionError("the base lattice must be even")
        d = Sublattice(form, tuple(_vec(r) for r in directions))
        inter = None if intermediate is None else Sublattice(form, tuple(_vec(r) for r in intermediate))
        return cls(form, d, even, even, None, 0, inter)

    @classmethod
    def from_json(cls, data: dict) -> "ExtensionSpec":
        try:
            base = data["base"]
            if "affine" in base:
                family, rank = base["affine"]
                t = SimpleLieType(str(family).upper(), int(rank))
                return cls.affine(t, int(data.get("level", 1)), data.get("L"), data.get("L1"))
            if "lattice" in base:
                lat = base["lattice"]
                gram = lat["gram"] if isinstance(lat, dict) else lat
                return cls.lattice(gram, data["L"], data.get("L1"))
        except (KeyError, TypeError, ValueError) as exc:
            raise ExtensionError(f"malformed extension spec: {exc}") from exc
        raise ExtensionError("base must be affine or lattice")

    def to_json(self) -> dict:
        rows = lambda s: [[frac_str(x) for x in r] for r in s.basis]  # noqa: E731
        out: dict = {"L": rows(self.directions)}
        if self.is_affine:
            out["base"] = {"affine": [self.lie_type.family, self.lie_type.rank]}
            out["level"] = self.level
        else:
            out["base"] = {"lattice": {"gram": [[frac_str(x) for x in r] for r in self.form.gram]}}
        if self.intermediate is not None:
            out["L1"] = rows(self.intermediate)
        return out


def _direction_rows(t: SimpleLieType, entries) -> tuple[Vector, ...]:
    rows = []
    for e in entries:
        if isinstance(e, int):
            rows.append(coweight(t, e))
        else:
            v = _vec(e)
            if len(v) != t.rank:
                raise ExtensionError(f"direction {e} needs {t.rank} coroot coordinates")
            rows.append(v)
    return tuple(rows)


# ---------------------------------------------------------------------------
# L0


def compute_L0(spec: ExtensionSpec) -> Sublattice:
    """Directions that deform the base algebra into itself.

    Lattice base: ``L`` meet ``E``.  Affine base: ``L`` meet the coroot lattice.
    The result is checked to be even and to lie in ``P`` and in its dual,
    where ``P`` is the lattice of weights of the base algebra.
    """
    d = spec.directions
    if d.rank == 0:
        return d
    if spec.is_affine:
        l0 = intersect_integral(d)
    else:
        l0 = intersect(d, spec.even)
    if not is_even(l0):
        raise InvariantViolation("L0 is not even")
    p = spec.weights
    p_dual = dual_sublattice(p)
    for row in l0.basis:
        if not (p.contains(row) and p_dual.contains(row)):
            raise InvariantViolation("L0 is not contained in P and its dual")
    return l0


def _trivial_group(dim: int) -> CosetGroup:
    return CosetGroup((), ((Fraction(0),) * dim,), ((),))


def _group(top: Sublattice, l0: Sublattice) -> CosetGroup:
    if top.rank == 0:
        return _trivial_group(top.parent.dim)
    return quotient(top, l0)


# ---------------------------------------------------------------------------
# verdicts


@dataclass
class Summand:
    label: ModuleLabel
    lowest_weight: Fraction
    direction: Vector

    def to_json(self) -> dict:
        return {
            "label": self.label.to_json(),
            "lowest_weight": frac_str(self.lowest_weight),
            "direction": [frac_str(x) for x in self.direction],
        }


@dataclass
class ExtensionVerdict:
    kind: str
    grading_group: CosetGroup
    summands: list[Summand]
    rational: bool | str
    holomorphic_pairs: list[tuple[ModuleLabel, ModuleLabel]]
    l0: Sublattice
    l1: Sublattice
    integrality: bool
    sub_extensions: list[dict] = field(default_factory=list)
    abelian_intertwining: bool = True
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        rows = lambda s: [[frac_str(x) for x in r] for r in s.basis]  # noqa: E731
        return {
            "kind": self.kind,
            "grading_group": list(self.grading_group.invariant_factors),
            "summands": [s.to_json() for s in self.summands],
            "rational": self.rational,
            "holomorphic_pairs": [[a.to_json(), b.to_json()] for a, b in self.holomorphic_pairs],
            "L0": rows(self.l0),
            "L1": rows(self.l1),
            "integrality_condition": self.integrality,
            "abelian_intertwining": self.abelian_intertwining,
            "sub_extensions": self.sub_extensions,
            "notes": self.notes,
        }


def _base_label(spec: ExtensionSpec) -> ModuleLabel:
    if spec.is_affine:
        return ModuleLabel.affine(spec.lie_type, spec.level, 0)
    return ModuleLabel.lattice(spec.even)


def _parity_kind(l1: Sublattice) -> str:
    """VOA, super-VOA or AIA from the sign (-1)^{<a,b>} on a basis of ``l1``."""
    g = l1.gram
    n = len(g)
    if all(g[i][j].numerator % 2 == 0 for i in range(n) for j in range(n)):
        return VOA
    parity = [g[i][i].numerator % 2 for i in range(n)]
    if all(g[i][j].numerator % 2 == parity[i] * parity[j] for i in range(n) for j in range(n)):
        return SUPER_VOA
    return AIA


def _kind(spec: ExtensionSpec, l1: Sublattice, l0: Sublattice) -> tuple[str, bool]:
    if l1.rank == 0:
        return VOA, True
    ok = check_integrality_condition(l1, l0, spec.weights)
    return (_parity_kind(l1) if ok else AIA), ok


def classify(spec: ExtensionSpec) -> ExtensionVerdict:
    """Classify the sum of the deformed copies of the base algebra over ``L1`` (default ``L``)."""
    l0 = compute_L0(spec)
    l1 = spec.intermediate if spec.intermediate is not None else spec.directions
    if spec.intermediate is not None and l0.rank and not _contains_all(l1, l0):
        raise ExtensionError("L1 must contain L0")
    group = _group(l1, l0)
    kind, integrality = _kind(spec, l1, l0)
    base = _base_label(spec)
    summands = []
    for rep in group.reps:
        lab = deform_label(base, rep)
        summands.append(Summand(lab, lowest_weight(lab), rep))
    rational: bool | str = True if kind in (VOA, SUPER_VOA) else "unknown"
    notes = []
    if spec.is_affine:
        notes.append(DERIVED_RULE_NOTE)
        if spec.lie_type == SimpleLieType("E", 8) and spec.level == 2:
            notes.append("E8 at level 2 has a further simple current with unknown label; it is not included")
    verdict = ExtensionVerdict(kind, group, summands, rational, [], l0, l1, integrality, notes=notes)
    verdict.sub_extensions = _sub_extensions(spec, group, base)
    verdict.holomorphic_pairs = _holomorphic_pairs(spec, base)
    return verdict


def _contains_all(l1: Sublattice, l0: Sublattice) -> bool:
    try:
        q = quotient(l1, l0)
    except LatticeError:
        return False
    return q.order >= 1


def _sub_extensions(spec: ExtensionSpec, group: CosetGroup, base: ModuleLabel) -> list[dict]:
    """Two-summand style extensions generated by a single nonzero class."""
    out = []
    for rep in group.reps:
        if not any(rep):
            continue
        sub = ExtensionSpec(spec.form, Sublattice(spec.form, (rep,)), spec.weights, spec.even, spec.lie_type, spec.level)
        l0 = compute_L0(sub)
        kind, ok = _kind(sub, sub.directions, l0)
        out.append(
            {
                "generator": deform_label(base, rep).to_json(),
                "order": _group(sub.directions, l0).order,
                "kind": kind,
                "integrality_condition": ok,
            }
        )
    return out


def _holomorphic_pairs(spec: ExtensionSpec, base: ModuleLabel) -> list[tuple[ModuleLabel, ModuleLabel]]:
    """Spinor pairs of type D when 8 divides rank times level."""
    t = spec.lie_type
    if t is None or t.family != "D" or (t.rank * spec.level) % 8:
        return []
    return [(base, ModuleLabel.affine(t, spec.level, i)) for i in (t.rank - 1, t.rank)]


# ---------------------------------------------------------------------------
# grading data


@dataclass
class GradingData:
    """Grading form, commutator and three-cocycle tables over the grading group.

    All entries are exponents ``q`` of ``exp(pi i q)`` reduced into ``[0, 2)``.
    ``eta`` and ``commutator`` are indexed by pairs from ``indices``; ``h`` by
    triples of group element positions.
    """

    group: CosetGroup
    indices: list[GradedIndex]
    eta: list[list[Fraction]]
    commutator: list[list[Fraction]]
    h: list[list[list[Fraction]]]
    root_table: BilinearRootTable

    def to_json(self) -> dict:
        q = lambda x: frac_str(mod2(x))  # noqa: E731
        return {
            "grading_group": list(self.group.invariant_factors),
            "indices": [
                {"alpha": [frac_str(x) for x in i.alpha], "lambda": [frac_str(x) for x in i.lam]} for i in self.indices
            ],
            "eta": [[q(x) for x in row] for row in self.eta],
            "commutator": [[q(x) for x in row] for row in self.commutator],
            "h": [[[q(x) for x in r] for r in plane] for plane in self.h],
        }


def sign_phase(l0: Sublattice):
    """Exponent map of the desk-model phase on ``L0``.

    On a basis ``a_i`` of ``L0`` the phase is ``(-1)^{<a_i,a_j>}`` times the
    standard sign cocycle ``eps(a_i, a_j) = (-1)^{<a_i,a_j>}`` for ``i > j``;
    it is bilinear, so it is recorded by its values on basis pairs.
    """
    g = l0.gram
    n = len(g)
    table = [[mod2(g[i][j] + (g[i][j] if i > j else 0)) for j in range(n)] for i in range(n)]
    rows = [list(r) for r in l0.basis]
    g_inv = mx.inverse(mx.mat_mul(rows, mx.transpose(rows))) if rows else []
    memo: dict = {}

    def coords(x):
        x = _vec(x)
        c = memo.get(x)
        if c is None:
            rhs = [sum((a * b for a, b in zip(r, x)), Fraction(0)) for r in rows]
            c = memo[x] = mx.vec_mat(rhs, g_inv)
        return c

    def a0(x, y) -> Fraction:
        cx, cy = coords(x), coords(y)
        return mod2(sum((cx[i] * cy[j] * table[i][j] for i in range(n) if cx[i] for j in range(n) if cy[j]), Fraction(0)))

    return a0


def grading_data(spec: ExtensionSpec) -> GradingData:
    """Tables for the abelian intertwining algebra structure on the full sum over ``L``."""
    l0 = compute_L0(spec)
    top = spec.directions
    group = _group(top, l0)
    form = spec.form
    dim = form.dim
    if top.rank == 0:
        root = BilinearRootTable.trivial(())
    else:
        big, small, _ = aligned_bases(top, l0)
        root = build_A1(big, small, sign_phase(l0))
    lams = [(Fraction(0),) * dim] + list(spec.weights.basis)
    indices = [GradedIndex(rep, lam) for rep in group.reps for lam in lams]
    eta_tab = [[eta(a, b, form) for b in indices] for a in indices]
    comm = [[bar_C_exponent(a, b, form, root) for b in indices] for a in indices] if top.rank else [
        [Fraction(0) for _ in indices] for _ in indices
    ]
    h = h_table(group, form, root) if top.rank else [[[Fraction(0)]]]
    if top.rank and first_2cocycle_failure(h, group) is not None:
        raise InvariantViolation("three-cocycle table fails the two-cocycle slice condition")
    return GradingData(group, indices, eta_tab, comm, h, root)


# ---------------------------------------------------------------------------
# twists of module extensions


@dataclass(frozen=True)
class TwistLabel:
    """sigma_gamma for the H-weight ``gamma`` of a module, with its order on the extension."""

    weight: Vector
    order: int

    @property
    def is_identity(self) -> bool:
        return self.order == 1

    def to_json(self) -> dict:
        return {"weight": [frac_str(x) for x in self.weight], "order": self.order}


def twist_of_module_extension(spec: ExtensionSpec, module: ModuleLabel) -> TwistLabel:
    """The automorphism by which the extension of ``module`` is twisted.

    ``gamma`` is the canonical weight of the module (its coset representative,
    or the fundamental weight of its node in the affine case, written in
    Dynkin labels).  The order is the least ``T`` with ``T <gamma, beta>``
    integral for every ``beta`` in ``L1``.
    """
    l1 = spec.intermediate if spec.intermediate is not None else spec.directions
    if module.is_lattice:
        if spec.is_affine:
            raise ExtensionError("a lattice module does not belong to an affine base")
        if l1.rank == 0:
            return TwistLabel(module.coset, 1)
        return TwistLabel(module.coset, sigma_order(module.coset, l1))
    if not spec.is_affine or module.lie_type != spec.lie_type:
        raise ExtensionError("module and base have different types")
    n = spec.lie_type.rank
    weight = tuple(Fraction(int(j + 1 == module.weight)) for j in range(n))
    if module.weight == 0:
        return TwistLabel(weight, 1)
    # lambda_i(beta) is the i-th coroot coordinate of beta.
    vals = [row[module.weight - 1] for row in l1.basis]
    return TwistLabel(weight, math.lcm(*(v.denominator for v in vals)) if vals else 1)


# ---------------------------------------------------------------------------
# convenience


def extension_index(spec: ExtensionSpec) -> int:
    """[L : L0]."""
    return _group(spec.directions, compute_L0(spec)).order


def unimodular_variant(spec: ExtensionSpec, matrix: Sequence[Sequence[int]]) -> ExtensionSpec:
    """The same spec with the basis of ``L1`` (or ``L``) changed by an integer unimodular matrix."""
    if spec.intermediate is not None:
        return ExtensionSpec(
            spec.form, spec.directions, spec.weights, spec.even, spec.lie_type, spec.level,
            spec.intermediate.transformed(matrix),
        )
    return ExtensionSpec(
        spec.form, spec.directions.transformed(matrix), spec.weights, spec.even, spec.lie_type, spec.level, None
    )


__all__ = [
    "AIA",
    "SUPER_VOA",
    "VOA",
    "ExtensionError",
    "ExtensionSpec",
    "ExtensionVerdict",
    "GradingData",
    "InvariantViolation",
    "Summand",
    "TwistLabel",
    "classify",
    "compute_L0",
    "extension_index",
    "grading_data",
    "sign_phase",
    "twist_of_module_extension",
    "unimodular_variant",
]
