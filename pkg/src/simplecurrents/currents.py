"""Simple-current bookkeeping at the level of module labels.

Two kinds of label are tracked:

* lattice labels ``V_{L0 + beta}``: a coset of an even lattice ``L0`` inside a
  rational ambient frame, stored through its canonical (minimal-norm)
  representative;
* affine labels ``L(level, lambda_i)`` with ``i`` a minimal node or 0 for the
  vacuum.

Deforming a module by ``Delta(alpha, z)`` is a translation on lattice labels
and, on affine labels, the action of the coweight class of ``alpha`` on the
minimal nodes (``L(level, 0)`` deformed by ``h_i`` is ``L(level, lambda_i)``).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from . import _matrix as mx
from .exact import frac, frac_str, lcm_many
from .lattice import LatticeError, RationalLattice, Sublattice, min_norm_in_coset
from .rootsys import SimpleLieType, build_root_system, coweight, coweight_norm, minimal_weights

Vector = tuple[Fraction, ...]

LATTICE = "lattice"
AFFINE = "affine"


class LabelError(ValueError):
    pass


def _vec(v) -> Vector:
    return tuple(frac(x) for x in v)


def _lie_type(t) -> SimpleLieType:
    return t if isinstance(t, SimpleLieType) else SimpleLieType.parse(t)


@dataclass(frozen=True)
class ModuleLabel:
    """An irreducible module named by a lattice coset or an affine highest weight.

    Use :meth:`lattice` and :meth:`affine` to build labels; both canonicalize.
    """

    kind: str
    coset: Vector = ()
    l0: Sublattice | None = field(default=None, repr=False)
    lie_type: SimpleLieType | None = None
    level: int = 0
    weight: int = 0

    @classmethod
    def lattice(cls, l0: Sublattice, coset=None) -> "ModuleLabel":
        """``V_{L0 + coset}``; ``l0`` must be an even full-rank sublattice."""
        if not l0.is_full_rank:
            raise LabelError("the even lattice must have full rank in its frame")
        g = l0.gram
        if any(g[i][i].denominator != 1 or g[i][i].numerator % 2 for i in range(len(g))) or any(
            x.denominator != 1 for row in g for x in row
        ):
            raise LabelError("the lattice of a lattice label must be even")
        coset = (Fraction(0),) * l0.parent.dim if coset is None else _vec(coset)
        if len(coset) != l0.parent.dim:
            raise LabelError("coset vector has the wrong dimension")
        return cls(LATTICE, min_norm_in_coset(coset, l0), l0)

    @classmethod
    def affine(cls, lie_type, level: int, weight: int = 0) -> "ModuleLabel":
        """``L(level, lambda_weight)``; ``weight`` is 0 or a minimal node (1-based)."""
        t = _lie_type(lie_type)
        if not isinstance(level, int) or level < 1:
            raise LabelError("level must be a positive integer")
        if weight != 0 and weight not in minimal_weights(t):
            raise LabelError(f"node {weight} of {t} is not minimal")
        return cls(AFFINE, lie_type=t, level=level, weight=weight)

    @property
    def is_lattice(self) -> bool:
        return self.kind == LATTICE

    def to_json(self) -> dict:
        if self.is_lattice:
            return {
                "kind": LATTICE,
                "coset": [frac_str(x) for x in self.coset],
                "gram": [[frac_str(x) for x in row] for row in self.l0.parent.gram],
                "sublattice": [[frac_str(x) for x in row] for row in self.l0.basis],
            }
        return {"kind": AFFINE, "type": str(self.lie_type), "level": self.level, "weight": self.weight}

    @classmethod
    def from_json(cls, data: dict) -> "ModuleLabel":
        try:
            if data["kind"] == LATTICE:
                parent = RationalLattice(tuple(_vec(r) for r in data["gram"]))
                return cls.lattice(Sublattice(parent, tuple(_vec(r) for r in data["sublattice"])), data["coset"])
            if data["kind"] == AFFINE:
                return cls.affine(data["type"], int(data["level"]), int(data.get("weight", 0)))
        except (KeyError, TypeError) as exc:
            raise LabelError(f"malformed label: {exc}") from exc
        raise LabelError(f"unknown label kind {data.get('kind')!r}")

    def __str__(self) -> str:
        if self.is_lattice:
            return "V[L0+(" + ",".join(frac_str(x) for x in self.coset) + ")]"
        name = "0" if self.weight == 0 else f"lambda_{self.weight}"
        return f"L({self.level},{name}) of {self.lie_type}"


# ---------------------------------------------------------------------------
# affine helpers


def _class_reps(t: SimpleLieType) -> dict[int, Vector]:
    """Minimal coweights by node, with the zero coweight for the vacuum."""
    n = t.rank
    reps = {0: (Fraction(0),) * n}
    for i in minimal_weights(t):
        reps[i] = coweight(t, i)
    return reps


def _coweight_coords(t: SimpleLieType, alpha) -> Vector:
    """Coordinates of a coroot-basis vector in the fundamental-coweight basis."""
    data = build_root_system(t)
    alpha = _vec(alpha)
    if len(alpha) != t.rank:
        raise LabelError(f"expected {t.rank} coroot coordinates")
    # h_i has coroot coordinates fund_coweights[i]; invert that change of basis.
    inv = mx.inverse([list(r) for r in data.fund_coweights])
    return tuple(mx.vec_mat(list(alpha), inv))


def _node_of_class(t: SimpleLieType, alpha) -> int:
    """The node (0 or minimal) whose coweight is congruent to ``alpha`` mod the coroot lattice."""
    alpha = _vec(alpha)
    for node, rep in _class_reps(t).items():
        if all((a - r).denominator == 1 for a, r in zip(alpha, rep)):
            return node
    raise LabelError(f"{alpha} is not congruent to a minimal coweight of {t}")


def _weight_support_pairings(label: ModuleLabel, alpha) -> list[Fraction]:
    """Values of alpha(0) on the lowest weight and on generators of the weight translations."""
    alpha = _vec(alpha)
    if label.is_lattice:
        p = label.l0.parent.pair
        return [p(alpha, label.coset)] + [p(alpha, b) for b in label.l0.basis]
    t = label.lie_type
    data = build_root_system(t)
    if len(alpha) != t.rank:
        raise LabelError(f"expected {t.rank} coroot coordinates")
    # Weight mu has Dynkin labels mu(alpha_j^vee); alpha_k has labels cartan[k][j].
    vals = [alpha[label.weight - 1]] if label.weight else [Fraction(0)]
    for k in range(t.rank):
        vals.append(sum((alpha[j] * data.cartan[k][j] for j in range(t.rank)), Fraction(0)))
    return vals


# ---------------------------------------------------------------------------
# operations


def sigma_order(alpha, space: ModuleLabel | Sequence[ModuleLabel] | Sublattice) -> int:
    """Order of ``sigma_alpha = exp(-2 pi i alpha(0))`` on a module or a direct sum of modules.

    ``space`` may be a label, a sequence of labels, or a lattice ``P`` (read as
    the weight support of ``V_P``).  The order is the least ``T`` with
    ``T <alpha, x>`` integral on the whole weight support.
    """
    if isinstance(space, Sublattice):
        alpha = _vec(alpha)
        vals = [space.parent.pair(alpha, b) for b in space.basis]
    else:
        labels = [space] if isinstance(space, ModuleLabel) else list(space)
        vals = [v for lab in labels for v in _weight_support_pairings(lab, alpha)]
    for v in vals:
        if not isinstance(v, Fraction):
            raise LabelError("alpha(0) must have rational eigenvalues")
    return lcm_many(v.denominator for v in vals) if vals else 1


def deform_label(label: ModuleLabel, alpha) -> ModuleLabel:
    """The label of ``(M, Y(Delta(alpha, z) . , z))``.

    Lattice labels: ``alpha`` must pair integrally with ``L0`` and the coset is
    translated by ``alpha``.  Affine labels: ``alpha`` is a coweight in
    simple-coroot coordinates; the node is moved along the class of ``alpha``
    in the coweight lattice modulo the coroot lattice.
    """
    alpha = _vec(alpha)
    if label.is_lattice:
        if len(alpha) != len(label.coset):
            raise LabelError("alpha has the wrong dimension")
        p = label.l0.parent.pair
        if any(p(alpha, b).denominator != 1 for b in label.l0.basis):
            raise LabelError("alpha must lie in the dual of the even lattice")
        return ModuleLabel.lattice(label.l0, tuple(a + b for a, b in zip(label.coset, alpha)))
    t = label.lie_type
    if any(c.denominator != 1 for c in _coweight_coords(t, alpha)):
        raise LabelError("alpha must lie in the coweight lattice")
    start = _class_reps(t)[label.weight]
    node = _node_of_class(t, tuple(a + b for a, b in zip(start, alpha)))
    return ModuleLabel.affine(t, label.level, node)


def lowest_weight(label: ModuleLabel) -> Fraction:
    """Conformal weight of the lowest graded piece.

    Lattice labels: the minimal ``<x, x>/2`` over the coset.  Affine labels:
    ``(level/2) (h_i, h_i)``, zero for the vacuum.
    """
    if label.is_lattice:
        return label.l0.parent.norm(label.coset) / 2
    if label.weight == 0:
        return Fraction(0)
    return Fraction(label.level, 2) * coweight_norm(label.lie_type, label.weight)


@dataclass(frozen=True)
class DeltaOperator:
    """Delta(alpha, z) together with the order of sigma_alpha on a stated space."""

    alpha: Vector
    order: int

    @classmethod
    def on(cls, alpha, space) -> "DeltaOperator":
        return cls(_vec(alpha), sigma_order(alpha, space))

    def inverse(self) -> "DeltaOperator":
        return DeltaOperator(tuple(-a for a in self.alpha), self.order)

    def relabel(self, label: ModuleLabel) -> ModuleLabel:
        return deform_label(label, self.alpha)


E8_LEVEL2_WARNING = (
    "E8 at level 2 has a simple current besides the vacuum that is not of the form L(2, lambda_i); "
    "its label is unknown and not listed"
)


@dataclass(frozen=True)
class CurrentList:
    """Simple currents of an affine vacuum algebra, with an exhaustiveness flag."""

    labels: tuple[ModuleLabel, ...]
    exhaustive: bool = True
    warnings: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[ModuleLabel]:
        return iter(self.labels)

    def __getitem__(self, i: int) -> ModuleLabel:
        return self.labels[i]

    def to_json(self) -> dict:
        return {
            "labels": [lab.to_json() for lab in self.labels],
            "exhaustive": self.exhaustive,
            "warnings": list(self.warnings),
        }


def simple_current_list(lie_type, level: int) -> CurrentList:
    """Vacuum plus ``L(level, lambda_i)`` for every minimal node ``i``."""
    t = _lie_type(lie_type)
    labels = [ModuleLabel.affine(t, level, 0)] + [ModuleLabel.affine(t, level, i) for i in minimal_weights(t)]
    if t == SimpleLieType("E", 8) and level == 2:
        return CurrentList(tuple(labels), exhaustive=False, warnings=(E8_LEVEL2_WARNING,))
    return CurrentList(tuple(labels))


# ---------------------------------------------------------------------------
# characters of lattice labels


def colored_partitions(colors: int, max_n: int) -> list[int]:
    """Coefficients of prod_{n>=1} (1 - q^n)^{-colors} up to q^max_n."""
    coeffs = [1] + [0] * max_n
    for _ in range(colors):
        for part in range(1, max_n + 1):
            for k in range(part, max_n + 1):
                coeffs[k] += coeffs[k - part]
    return coeffs


def coset_points(label: ModuleLabel, max_weight) -> list[Vector]:
    """All ``x`` in the coset with ``<x, x>/2 <= max_weight`` (box search)."""
    if not label.is_lattice:
        raise LabelError("coset points need a lattice label")
    max_weight = frac(max_weight)
    l0 = label.l0
    g = l0.gram
    g_inv = mx.inverse([list(r) for r in g])
    p = l0.parent.pair
    # x = coset + c B; center the box at the real minimizer of the norm.
    w = [p(label.coset, b) for b in l0.basis]
    center = [-x for x in mx.vec_mat(w, g_inv)]
    radii = [math.isqrt(math.floor(2 * max_weight * g_inv[i][i])) + 1 for i in range(len(g))]
    out = []
    ranges = [range(math.floor(c) - r, math.ceil(c) + r + 1) for c, r in zip(center, radii)]
    for c in itertools.product(*ranges):
        x = tuple(a + b for a, b in zip(label.coset, l0.vector(c)))
        if p(x, x) / 2 <= max_weight:
            out.append(x)
    return out


def lattice_character(label: ModuleLabel, max_weight) -> dict[Fraction, int]:
    """Graded dimension of ``V_{L0 + beta}`` up to ``max_weight``, by brute force.

    Theta-series terms come from :func:`coset_points`; the Heisenberg factor is
    a colored partition count with one color per ambient dimension.
    """
    max_weight = frac(max_weight)
    parts = colored_partitions(label.l0.parent.dim, int(math.floor(max_weight - lowest_weight(label))) + 1)
    p = label.l0.parent.pair
    counts: dict[Fraction, int] = {}
    for x in coset_points(label, max_weight):
        base = p(x, x) / 2
        for k, mult in enumerate(parts):
            if base + k > max_weight:
                break
            if mult:
                counts[base + k] = counts.get(base + k, 0) + mult
    return dict(sorted(counts.items()))
