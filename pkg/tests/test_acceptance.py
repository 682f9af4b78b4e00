"""Acceptance criteria, one test (or one passing part plus a strict xfail) per criterion.

Every test records a ``criterion N: PASS|FAIL ...`` line that is printed in the
terminal summary.  Literal claims that the exact computation contradicts are
strict xfails: they record FAIL and are expected to keep failing.
"""

import json
import time
from fractions import Fraction

import pytest

from conftest import record_criterion
from simplecurrents.cli import main
from simplecurrents.currents import ModuleLabel, lattice_character
from simplecurrents.extend import AIA, SUPER_VOA, VOA, ExtensionSpec, classify
from simplecurrents.fock import ONE, FockSpace
from simplecurrents.identities import (
    check_commutation,
    check_e_minus_conjugation,
    check_nilpotency,
    check_vertex_of_e_minus,
    deformed_character,
)
from simplecurrents.lattice import RationalLattice
from simplecurrents.rootsys import coweight_norm
from simplecurrents.verify import labels_suite, run_suite

F = Fraction

MINIMAL_TABLE = {
    **{f"A{n}": list(range(1, n + 1)) for n in range(1, 9)},
    **{f"B{n}": [n] for n in range(2, 9)},
    **{f"C{n}": [1] for n in range(2, 9)},
    **{f"D{n}": [1, n - 1, n] for n in range(3, 9)},
    "E6": [1, 6],
    "E7": [7],
    "E8": [],
    "F4": [],
    "G2": [],
}


def test_criterion_01_minimal_weight_table(capsys):
    start = time.perf_counter()
    got = {}
    for name in MINIMAL_TABLE:
        assert main(["minimal", name]) == 0
        got[name] = json.loads(capsys.readouterr().out)
    elapsed = time.perf_counter() - start
    ok = got == MINIMAL_TABLE and elapsed < 1
    record_criterion(1, f"minimal-weight table for {len(got)} types ({elapsed:.2f} s)", ok)
    assert ok


def test_criterion_02_coweight_norms():
    a_ok = all(coweight_norm(f"A{n}", i) == F(i * (n + 1 - i), n + 1) for n in range(1, 9) for i in range(1, n + 1))
    b_ok = all(coweight_norm(f"B{n}", n) == 1 for n in range(2, 9))
    d_ok = all(coweight_norm(f"D{n}", k) == F(n, 4) for n in range(3, 9) for k in (n - 1, n))
    ok = a_ok and b_ok and d_ok
    record_criterion(2, "coweight norms: A_n i(n+1-i)/(n+1), B_n h_n = 1, D_n spinors n/4", ok)
    assert ok


@pytest.mark.xfail(strict=True, reason="(h_1, h_1) = n/2 for C_n, equal to 1 only for n = 2; see ledger")
def test_criterion_02_literal_c_series():
    ok = all(coweight_norm(f"C{n}", 1) == 1 for n in range(2, 9))
    record_criterion(2, "literal C_n (h_1, h_1) = 1 for n = 2..8 (unattainable, see ledger)", ok)
    assert ok


def test_criterion_03_delta_identities():
    start = time.perf_counter()
    reports = [run_suite("delta", model, 6) for model in ("A1", "A2")]
    elapsed = time.perf_counter() - start
    ok = all(r.passed for r in reports) and elapsed < 30
    record_criterion(3, f"Delta closed forms and axioms in A1 and A2 at cutoff 6 ({elapsed:.1f} s)", ok)
    assert ok, [r.to_text() for r in reports]


def test_criterion_04_exponential_commutation():
    space = FockSpace([[2]])
    values = (1, F(1, 2), -1)
    reports = [
        check_commutation(space, (1,), s, t, order=8, vectors=space.basis(3)) for s in values for t in values
    ]
    ok = all(r.passed for r in reports)
    record_criterion(4, "E+ E- commutation to order 8 for s, t in {1, 1/2, -1}", ok)
    assert ok


def test_criterion_05_e_minus_identities():
    space = FockSpace([[2]])
    alpha = (F(1, 2),)
    vectors = space.basis(2)
    reports = [
        check_vertex_of_e_minus(space, alpha, cutoff=5, vectors=vectors),
        check_e_minus_conjugation(space, alpha, cutoff=5, vectors=vectors),
    ]
    ok = all(r.passed for r in reports) and all(r.checked >= len(vectors) for r in reports)
    record_criterion(5, f"E- vertex and conjugation identities at cutoff 5 on {len(vectors)} vectors", ok)
    assert ok


def test_criterion_06_deformed_character():
    space = FockSpace([[2]])
    beta = (F(1, 2),)
    deformed = deformed_character(space, beta, 6)
    label = ModuleLabel.lattice(RationalLattice(((2,),)).full(), beta)
    coset = lattice_character(label, 6)
    ok = deformed == coset and max(deformed) > 5
    record_criterion(6, "deformed L(0) spectrum equals the coset character through q^6", ok)
    assert ok


def test_criterion_07_cocycle_suite():
    start = time.perf_counter()
    reports = [run_suite("cocycle", model) for model in ("Z2", "Z2xZ2")]
    elapsed = time.perf_counter() - start
    ok = all(r.passed for r in reports) and elapsed < 5
    record_criterion(7, f"grading form, commutator maps, A0 and h exhaustive on Z2 and Z2xZ2 ({elapsed:.2f} s)", ok)
    assert ok, [r.to_text() for r in reports]


def test_criterion_08_generalized_jacobi():
    start = time.perf_counter()
    report = run_suite("jacobi", "A1", 4)
    elapsed = time.perf_counter() - start
    (identity,) = report.reports
    ok = report.passed and elapsed < 300
    record_criterion(
        8, f"generalized Jacobi identity, A1, bound 4, {identity.checked} coefficients ({elapsed:.0f} s)", ok
    )
    assert ok, report.to_text()


def _a_series_ok():
    for n in range(1, 9):
        for level in (2 * (n + 1), 4 * (n + 1)):
            v = classify(ExtensionSpec.affine(f"A{n}", level))
            if v.kind != VOA or len(v.summands) != n + 1:
                return False
            (l0,), (l1,) = v.l0.basis, v.l1.basis
            if l0 not in (tuple((n + 1) * x for x in l1), tuple(-(n + 1) * x for x in l1)):
                return False
        if n % 2:  # "only if" for odd n
            for level in range(1, 4 * (n + 1) + 1):
                if (classify(ExtensionSpec.affine(f"A{n}", level)).kind == VOA) != (level % (2 * (n + 1)) == 0):
                    return False
    return True


def _b_and_c_series_ok():
    for family, ranks in (("B", range(2, 9)), ("C", (2, 6))):
        for n in ranks:
            for level in range(1, 5):
                v = classify(ExtensionSpec.affine(f"{family}{n}", level))
                if v.kind != (VOA if level % 2 == 0 else SUPER_VOA):
                    return False
    for family in "BC":
        for n in range(2, 9):
            v = classify(ExtensionSpec.affine(f"{family}{n}", 1))
            (l0,), (l1,) = v.l0.basis, v.l1.basis
            if l0 not in (tuple(2 * x for x in l1), tuple(-2 * x for x in l1)):
                return False
    weights = sorted(s.lowest_weight for s in classify(ExtensionSpec.affine("B3", 1)).summands)
    return weights == [0, F(1, 2)]


def _d_series_ok():
    for n in (4, 6, 8):
        for level in (1, 2, 3, 5, 6):
            v = classify(ExtensionSpec.affine(f"D{n}", level))
            if v.kind != AIA or v.grading_group.invariant_factors != (2, 2):
                return False
    for n in range(3, 9):
        for level in range(1, 9):
            if bool(classify(ExtensionSpec.affine(f"D{n}", level)).holomorphic_pairs) != ((n * level) % 8 == 0):
                return False
    return True


def test_criterion_09_classifier_verdicts():
    parts = {"A": _a_series_ok(), "B/C": _b_and_c_series_ok(), "D": _d_series_ok()}
    ok = all(parts.values())
    detail = ", ".join(f"{k} {'ok' if v else 'wrong'}" for k, v in parts.items())
    record_criterion(9, f"classifier verdicts for the four families ({detail})", ok)
    assert ok


@pytest.mark.xfail(strict=True, reason="for even n the A_n extension is also a VOA at odd multiples of n+1; see ledger")
def test_criterion_09_literal_a_iff_for_even_n():
    ok = all(
        (classify(ExtensionSpec.affine(f"A{n}", level)).kind == VOA) == (level % (2 * (n + 1)) == 0)
        for n in (2, 4)
        for level in range(1, 2 * (n + 1) + 1)
    )
    record_criterion(9, "literal A_n 'VOA iff l in 2(n+1)Z' for even n (unattainable, see ledger)", ok)
    assert ok


@pytest.mark.xfail(strict=True, reason="C_n parity follows the level only for n = 2 mod 4; see ledger")
def test_criterion_09_literal_c_parity_for_other_ranks():
    ok = all(
        classify(ExtensionSpec.affine(f"C{n}", level)).kind == (VOA if level % 2 == 0 else SUPER_VOA)
        for n in (3, 4, 5, 7, 8)
        for level in (1, 2)
    )
    record_criterion(9, "literal C_n parity rule for n = 3, 4, 5, 7, 8 (unattainable, see ledger)", ok)
    assert ok


def test_criterion_10_nilpotency():
    space = FockSpace([[2]])
    field = {space.key((), (1,)): ONE}
    vectors = space.basis(4)
    report = check_nilpotency(space, field, cutoff=4, vectors=vectors)
    ok = report.passed and report.checked > 0
    record_criterion(10, f"modes of Y(e^alpha, z)^2 vanish on {len(vectors)} vectors of degree <= 4", ok)
    assert ok


def test_criterion_11_group_action():
    models = ["A1", "A2", "D4", "affine-A3", "affine-D4", "affine-D5", "affine-E6", "affine-B3"]
    reports = [labels_suite(model, samples=100, seed=11) for model in models]
    ok = all(r.passed for r in reports) and all(x.checked == 100 for r in reports for x in r.reports)
    record_criterion(11, f"deform_label action law and L0 identity, 100 samples on {len(models)} models", ok)
    assert ok, [r.to_text() for r in reports if not r.passed]
