"""Batch verification suites over small desk models.

Each suite returns a :class:`SuiteReport`, a list of named
:class:`~simplecurrents.identities.IdentityReport` results.  Every suite accepts
``inject=True``, which runs it against a deliberately wrong ingredient so
that callers can confirm the suite actually detects errors.

Models
------
``A1``
    The lattice algebra of the A1 root lattice (Gram ``[[2]]``), deformed by
    half the root.
``A2``
    The A2 root lattice, deformed by the first fundamental weight.
``Z2`` / ``Z2xZ2`` / ``D4``
    Grading data for the cocycle suite: the A1 root lattice inside its dual,
    two orthogonal copies of that, and affine D4 at level 1.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import _matrix as mx
from .cocycle import (
    GradedIndex,
    bar_C_exponent,
    c0_exponent,
    comm_exponent,
    commutator_property_failures,
    eta_property_failures,
    first_2cocycle_failure,
    mod2,
    verify_A0_cocycle,
)
from .currents import ModuleLabel, deform_label, lattice_character
from .deformed import DeformedModel, check_jacobi
from .exact import frac, frac_str
from .extend import ExtensionSpec, compute_L0, grading_data, sign_phase
from .fock import ONE, FockSpace
from .identities import (
    IdentityReport,
    a0_from_pi_bar,
    check_commutation,
    check_delta_axioms,
    check_e_minus_conjugation,
    check_nilpotency,
    check_skew_symmetry,
    check_vertex_of_e_minus,
    deformed_character,
)
from .lattice import RationalLattice
from .rootsys import SimpleLieType, build_root_system, minimal_weights

SUITES = ("characters", "cocycle", "delta", "jacobi", "labels", "operators")

LATTICE_MODELS = {
    "A1": ([[2]], (Fraction(1, 2),)),
    "A2": ([[2, -1], [-1, 2]], (Fraction(2, 3), Fraction(1, 3))),
}

DEFAULT_CUTOFF = {"characters": 6, "cocycle": 0, "delta": 6, "jacobi": 2, "labels": 0, "operators": 5}


class SuiteError(ValueError):
    pass


@dataclass
class SuiteReport:
    suite: str
    model: str
    cutoff: int
    reports: list[IdentityReport] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "model": self.model,
            "cutoff": self.cutoff,
            "passed": self.passed,
            "identities": [r.to_json() for r in sorted(self.reports, key=lambda r: r.name)],
            "seconds": round(self.seconds, 3),
        }

    def to_text(self) -> str:
        lines = [f"{self.suite} [{self.model}, cutoff {self.cutoff}]: {'PASS' if self.passed else 'FAIL'}"]
        for r in sorted(self.reports, key=lambda r: r.name):
            status = "PASS" if r.passed else "FAIL"
            lines.append(f"  {status} {r.name} ({r.checked} checked)")
            if r.failure:
                lines.append(f"       first failure: {r.failure}")
        return "\n".join(lines)


def lattice_model(name: str) -> tuple[FockSpace, tuple[Fraction, ...]]:
    """The Fock space of a named root lattice and its default deformation direction."""
    try:
        gram, alpha = LATTICE_MODELS[name]
    except KeyError as exc:
        raise SuiteError(f"unknown lattice model {name!r}; choose from {sorted(LATTICE_MODELS)}") from exc
    return FockSpace(gram, name), alpha


def _formula_report(space: FockSpace, alpha, inject: bool) -> IdentityReport:
    """Delta(alpha,z) applied to weight-one Heisenberg vectors and to omega, in closed form."""
    checked = 0
    failure = None
    delta = lambda vd: space.delta(alpha, vd, sign_flip=inject)  # noqa: E731
    vac = space.vacuum()
    for i in range(space.rank):
        beta = tuple(Fraction(int(i == j)) for j in range(space.rank))
        vec = space.heis(beta, -1, vac)
        expected = {Fraction(0): vec}
        pairing = space.pair(alpha, beta)
        if pairing:
            expected[Fraction(-1)] = {k: c * pairing for k, c in vac.items()}
        checked += 1
        if _series_differs(delta(vec), expected) and failure is None:
            failure = {"vector": f"h{i + 1}(-1)"}
    omega = space.omega()
    expected = {Fraction(0): omega, Fraction(-1): space.heis(alpha, -1, vac)}
    norm = space.pair(alpha, alpha) / 2
    if norm:
        expected[Fraction(-2)] = {k: c * norm for k, c in vac.items()}
    checked += 1
    if _series_differs(delta(omega), expected) and failure is None:
        failure = {"vector": "omega"}
    return IdentityReport("closed form on weight one and omega", failure is None, checked, 0, failure)


def _series_differs(got: dict, expected: dict) -> bool:
    got = {frac(e): {k: frac(c) for k, c in v.items() if c} for e, v in got.items()}
    got = {e: v for e, v in got.items() if v}
    expected = {frac(e): {k: frac(c) for k, c in v.items() if c} for e, v in expected.items()}
    expected = {e: v for e, v in expected.items() if v}
    return got != expected


def delta_suite(model: str = "A1", cutoff: int = 6, inject: bool = False) -> SuiteReport:
    start = time.perf_counter()
    space, alpha = lattice_model(model)
    report = SuiteReport("delta", model, cutoff)
    report.reports.append(_formula_report(space, alpha, inject))
    report.reports.extend(check_delta_axioms(space, alpha, cutoff, sign_flip=inject).reports())
    report.seconds = time.perf_counter() - start
    return report


def operators_suite(model: str = "A1", cutoff: int = 5, inject: bool = False) -> SuiteReport:
    """E+/E- commutation, the two E^- identities, skew-symmetry and a vanishing square."""
    start = time.perf_counter()
    space, alpha = lattice_model(model)
    report = SuiteReport("operators", model, cutoff)
    root = tuple(Fraction(int(j == 0)) for j in range(space.rank))
    for s, t in itertools.product((1, Fraction(1, 2), -1), repeat=2):
        r = check_commutation(space, root, s, t, order=cutoff + 3, vectors=space.basis(2), mutate=inject)
        r.name = f"E+ E- commutation s={frac_str(s)} t={frac_str(t)}"
        report.reports.append(r)
    report.reports.append(check_vertex_of_e_minus(space, alpha, cutoff))
    report.reports.append(check_e_minus_conjugation(space, alpha, cutoff))
    report.reports.append(check_skew_symmetry(space, min(cutoff, 3)))
    field_vec = {space.key((), root): ONE}
    report.reports.append(check_nilpotency(space, field_vec, min(cutoff, 4), space.basis(4 if model == "A1" else 2)))
    report.seconds = time.perf_counter() - start
    return report


def jacobi_suite(model: str = "A1", cutoff: int = 2, inject: bool = False) -> SuiteReport:
    """Generalized Jacobi identity on the deformed copies labelled 0 and alpha."""
    start = time.perf_counter()
    space, alpha = lattice_model(model)
    labels = [tuple(Fraction(0) for _ in alpha), alpha]
    dm = DeformedModel(space, labels)
    vectors = dm.basis(2)
    jr = check_jacobi(dm, vectors, cutoff, commutator_shift=1 if inject else 0)
    report = SuiteReport("jacobi", model, cutoff)
    report.reports.append(IdentityReport("generalized Jacobi identity", jr.passed, jr.coefficients, cutoff, jr.failure))
    report.seconds = time.perf_counter() - start
    return report


def characters_suite(model: str = "A1", cutoff: int = 6, inject: bool = False) -> SuiteReport:
    """Deformed L(0) spectrum against a brute-force count of the coset module."""
    start = time.perf_counter()
    space, alpha = lattice_model(model)
    lattice = RationalLattice(tuple(tuple(frac(x) for x in r) for r in space.gram))
    coset = tuple(0 for _ in alpha) if inject else alpha
    label = ModuleLabel.lattice(lattice.full(), coset)
    got = deformed_character(space, alpha, cutoff)
    want = lattice_character(label, cutoff)
    failure = None
    if got != want:
        bad = min(set(got) ^ set(want) | {w for w in got if got[w] != want.get(w)})
        failure = {"weight": frac_str(bad), "deformed": got.get(bad, 0), "coset": want.get(bad, 0)}
    report = SuiteReport("characters", model, cutoff)
    report.reports.append(IdentityReport("deformed character equals coset character", failure is None, len(want), cutoff, failure))
    report.seconds = time.perf_counter() - start
    return report


# ---------------------------------------------------------------------------
# cocycle suite


def cocycle_spec(model: str) -> ExtensionSpec:
    if model == "Z2":
        return ExtensionSpec.lattice([[2]], [[Fraction(1, 2)]])
    if model == "Z2xZ2":
        return ExtensionSpec.lattice([[2, 0], [0, 2]], [[Fraction(1, 2), 0], [0, Fraction(1, 2)]])
    if model == "D4":
        return ExtensionSpec.affine("D4", 1)
    raise SuiteError(f"unknown cocycle model {model!r}; choose from Z2, Z2xZ2, D4")


def _box(basis, radius: int = 1) -> list[tuple[Fraction, ...]]:
    dim = len(basis[0]) if basis else 0
    out = []
    for c in itertools.product(range(-radius, radius + 1), repeat=len(basis)):
        out.append(tuple(sum((ci * b[k] for ci, b in zip(c, basis)), Fraction(0)) for k in range(dim)))
    return out


def _memo(fn):
    return lru_cache(maxsize=None)(fn)


def _vadd(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _from_failures(name: str, failures: list[str], checked: int) -> IdentityReport:
    return IdentityReport(name, not failures, checked, 0, {"detail": failures[0]} if failures else None)


def cocycle_suite(model: str = "Z2", cutoff: int = 0, inject: bool = False) -> SuiteReport:
    """Exhaustive checks of the grading form, commutator maps and cocycles on a finite quotient."""
    start = time.perf_counter()
    spec = cocycle_spec(model)
    form = spec.form
    l0 = compute_L0(spec)
    data = grading_data(spec)
    base_a0 = sign_phase(l0)
    rows = [list(r) for r in l0.basis]
    row_gram_inv = mx.inverse(mx.mat_mul(rows, mx.transpose(rows)))

    def first_coord(x) -> Fraction:
        rhs = [sum((a * frac(b) for a, b in zip(r, x)), Fraction(0)) for r in rows]
        return mx.vec_mat(rhs, row_gram_inv)[0]

    @lru_cache(maxsize=None)
    def a0(x, y) -> Fraction:
        if not inject:
            return base_a0(x, y)
        # A non-bilinear perturbation that breaks the two-cocycle condition.
        return mod2(base_a0(x, y) + first_coord(x) * first_coord(y) ** 2 / 2)

    idx = data.indices
    l0_sample = _box(l0.basis)
    l_sample = list(dict.fromkeys(list(data.group.reps) + _box(spec.directions.basis)))
    root = data.root_table
    reports = [
        _from_failures("grading form is symmetric and additive", eta_property_failures(idx, form), len(idx) ** 3),
        _from_failures(
            "commutator map C",
            commutator_property_failures(_memo(lambda a, b: comm_exponent(a, b, form)), idx, GradedIndex.__add__),
            len(idx) ** 3,
        ),
        _from_failures(
            "commutator map C0 of A0",
            commutator_property_failures(_memo(lambda x, y: c0_exponent(a0, x, y)), l0_sample, _vadd),
            len(l0_sample) ** 3,
        ),
        _from_failures(
            "commutator map C1 of A1",
            commutator_property_failures(_memo(root.c1_exponent), l_sample, _vadd),
            len(l_sample) ** 3,
        ),
        _from_failures(
            "commutator map C-bar",
            commutator_property_failures(_memo(lambda a, b: bar_C_exponent(a, b, form, root)), idx, GradedIndex.__add__),
            len(idx) ** 3,
        ),
    ]
    triples = list(itertools.product(l0_sample, repeat=3))
    ok = verify_A0_cocycle(a0, triples)
    reports.append(IdentityReport("A0 is a two-cocycle", ok, len(triples), 0, None if ok else {"detail": "A0 cocycle condition fails"}))
    squares = [(x, y) for x in l0_sample for y in l0_sample if mod2(2 * root.a1_exponent(x, y) - a0(x, y)) != 0]
    reports.append(
        IdentityReport(
            "A1 squares to A0 on L0",
            not squares,
            len(l0_sample) ** 2,
            0,
            {"pair": [[frac_str(c) for c in v] for v in squares[0]]} if squares else None,
        )
    )
    if not spec.is_affine:
        space = FockSpace(form.gram)
        mism = []
        for x, y in itertools.product(l0.basis, repeat=2):
            desk = a0_from_pi_bar(space, x, y, space.basis(1))
            if mod2(0 if desk == 1 else 1) != a0(x, y):
                mism.append((x, y))
        reports.append(
            IdentityReport(
                "A0 agrees with the desk-model isomorphisms",
                not mism,
                len(l0.basis) ** 2,
                0,
                {"pair": [[frac_str(c) for c in v] for v in mism[0]]} if mism else None,
            )
        )
    bad = first_2cocycle_failure(data.h, data.group) if data.group.invariant_factors else None
    n = data.group.order
    reports.append(
        IdentityReport(
            "three-cocycle h: two-cocycle in its first two arguments",
            bad is None,
            n**4,
            0,
            None if bad is None else {"i,j,r,k": list(bad)},
        )
    )
    report = SuiteReport("cocycle", model, cutoff, reports)
    report.seconds = time.perf_counter() - start
    return report


# ---------------------------------------------------------------------------
# label action


def _random_lattice_sample(rng: random.Random, label_l0, dual_rows, zero):
    def rand_dual():
        v = list(zero)
        for row in dual_rows:
            c = rng.randint(-3, 3)
            v = [a + c * b for a, b in zip(v, row)]
        return tuple(v)

    def rand_l0():
        v = list(zero)
        for row in label_l0.basis:
            c = rng.randint(-3, 3)
            v = [a + c * b for a, b in zip(v, row)]
        return tuple(v)

    module = ModuleLabel.lattice(label_l0, rand_dual())
    return module, rand_dual(), rand_dual(), rand_l0()


def _random_affine_sample(rng: random.Random, lie_type: str, level: int):
    t = SimpleLieType.parse(lie_type)
    nodes = [0] + minimal_weights(t)
    data = build_root_system(t)

    def rand_coweight():
        v = [Fraction(0)] * t.rank
        for i in range(t.rank):
            c = rng.randint(-2, 2)
            v = [a + c * b for a, b in zip(v, data.fund_coweights[i])]
        return tuple(v)

    def rand_coroot():
        return tuple(Fraction(rng.randint(-3, 3)) for _ in range(t.rank))

    module = ModuleLabel.affine(t, level, rng.choice(nodes))
    return module, rand_coweight(), rand_coweight(), rand_coroot()


LABEL_MODELS = {
    "A1": lambda: ("lattice", [[2]]),
    "A2": lambda: ("lattice", [[2, -1], [-1, 2]]),
    "D4": lambda: ("lattice", [[2, 0, -1, 0], [0, 2, -1, 0], [-1, -1, 2, -1], [0, 0, -1, 2]]),
    "affine-A3": lambda: ("affine", "A3"),
    "affine-D4": lambda: ("affine", "D4"),
    "affine-D5": lambda: ("affine", "D5"),
    "affine-E6": lambda: ("affine", "E6"),
    "affine-B3": lambda: ("affine", "B3"),
}


def labels_suite(model: str = "A1", samples: int = 100, inject: bool = False, seed: int = 0) -> SuiteReport:
    """Random checks that deformation is an action of L on labels, trivial on L0."""
    start = time.perf_counter()
    if model not in LABEL_MODELS:
        raise SuiteError(f"unknown label model {model!r}; choose from {sorted(LABEL_MODELS)}")
    kind, data = LABEL_MODELS[model]()
    rng = random.Random(seed)
    samples = samples or 100
    law = _Counter("action law deform(deform(M,a),b) = deform(M,a+b)")
    trivial = _Counter("deformation by L0 is the identity")
    if kind == "lattice":
        lat = RationalLattice(tuple(tuple(frac(x) for x in r) for r in data))
        l0 = lat.full()
        dual_rows = [tuple(r) for r in mx.inverse([list(r) for r in lat.gram])]
        zero = (Fraction(0),) * lat.dim
        draw = lambda: _random_lattice_sample(rng, l0, dual_rows, zero)  # noqa: E731
    else:
        draw = lambda: _random_affine_sample(rng, data, rng.randint(1, 4))  # noqa: E731
    for _ in range(samples):
        module, a, b, c = draw()
        if inject:
            b = tuple(2 * x for x in b)
            lhs = deform_label(deform_label(module, a), tuple(x / 2 for x in b))
        else:
            lhs = deform_label(deform_label(module, a), b)
        rhs = deform_label(module, _vadd(a, b))
        law.record(lhs == rhs, {"module": str(module), "a": [frac_str(x) for x in a], "b": [frac_str(x) for x in b]})
        trivial.record(deform_label(module, c) == module, {"module": str(module), "l0": [frac_str(x) for x in c]})
    report = SuiteReport("labels", model, 0, [law.report(), trivial.report()])
    report.seconds = time.perf_counter() - start
    return report


class _Counter:
    def __init__(self, name: str):
        self.name = name
        self.checked = 0
        self.failure = None

    def record(self, ok: bool, context: dict) -> None:
        self.checked += 1
        if not ok and self.failure is None:
            self.failure = context

    def report(self) -> IdentityReport:
        return IdentityReport(self.name, self.failure is None, self.checked, 0, self.failure)


def run_suite(
    suite: str, model: str | None = None, cutoff: int | None = None, inject: bool = False, seed: int = 0
) -> SuiteReport:
    if suite not in SUITES:
        raise SuiteError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    cutoff = DEFAULT_CUTOFF[suite] if cutoff is None else cutoff
    if cutoff < 0:
        raise SuiteError("cutoff must be nonnegative")
    if suite == "cocycle":
        return cocycle_suite(model or "Z2", cutoff, inject)
    if suite == "labels":
        return labels_suite(model or "A1", cutoff, inject, seed)
    fn = {
        "characters": characters_suite,
        "delta": delta_suite,
        "jacobi": jacobi_suite,
        "operators": operators_suite,
    }[suite]
    return fn(model or "A1", cutoff, inject)
