import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from simplecurrents.lattice import (
    LatticeError,
    RationalLattice,
    Sublattice,
    check_integrality_condition,
    dual_lattice,
    dual_sublattice,
    intersect,
    intersect_integral,
    is_even,
    is_integral_lattice,
    min_norm_in_coset,
    quotient,
    vectors_up_to_norm,
)

F = Fraction
A1 = RationalLattice(((2,),))
A2 = RationalLattice(((2, -1), (-1, 2)))
D4 = RationalLattice(((2, -1, 0, 0), (-1, 2, -1, -1), (0, -1, 2, 0), (0, -1, 0, 2)))


def test_dual_grams():
    assert dual_lattice(A1).gram == ((F(1, 2),),)
    assert dual_lattice(RationalLattice(((4,),))).gram == ((F(1, 4),),)
    z3 = RationalLattice(((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    assert dual_lattice(z3).gram == z3.gram


def test_evenness():
    assert is_even(A1)
    assert not is_even(RationalLattice(((1,),)))
    assert is_even(RationalLattice(((4, 1), (1, 2))))
    assert is_integral_lattice(RationalLattice(((1,),)))
    assert not is_integral_lattice(dual_lattice(A1))


@pytest.mark.parametrize("gram", [((0,),), ((1, 2), (3, 4)), ((1, 1), (1, 1)), ()])
def test_bad_grams(gram):
    with pytest.raises(LatticeError):
        RationalLattice(gram)


def test_quotient_of_a1_dual_by_root_lattice():
    # Frame: the dual lattice generated by alpha/2 (norm 1/2); the root lattice is 2Z in it.
    dual = RationalLattice(((F(1, 2),),))
    group = quotient(dual.full(), Sublattice(dual, ((2,),)))
    assert group.invariant_factors == (2,)
    assert sorted(group.reps) == [(F(0),), (F(1),)]
    assert quotient(A1.full(), A1.full()).invariant_factors == ()


def test_quotient_diagonal():
    z2 = RationalLattice(((1, 0), (0, 1)))
    group = quotient(z2.full(), Sublattice(z2, ((3, 0), (0, 1))))
    assert group.invariant_factors == (3,)


def test_weight_lattice_quotients():
    # weight lattice / root lattice: Z3 for A2, Z2 x Z2 for D4
    for lat, factors in [(A2, (3,)), (D4, (2, 2))]:
        weights = dual_sublattice(lat.full())
        assert quotient(weights, lat.full()).invariant_factors == factors


@st.composite
def integer_bases(draw, dim=2):
    rows = draw(st.lists(st.lists(st.integers(-4, 4), min_size=dim, max_size=dim), min_size=dim, max_size=dim))
    det = round(_det(rows))
    if det == 0:
        rows = [[3, 0], [0, 1]]
    return rows


def _det(rows):
    if len(rows) == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    raise NotImplementedError


@given(integer_bases())
def test_quotient_order_is_index(rows):
    z2 = RationalLattice(((1, 0), (0, 1)))
    group = quotient(z2.full(), Sublattice(z2, tuple(tuple(r) for r in rows)))
    assert group.order == abs(_det(rows))
    # invariant factors divide one another
    f = group.invariant_factors
    assert all(f[i + 1] % f[i] == 0 for i in range(len(f) - 1))
    # representatives lie in pairwise distinct classes
    assert len({group.element_of(r) for r in group.reps}) == group.order


@given(integer_bases(), st.integers(0, 20), st.integers(0, 20))
def test_group_law_matches_vector_addition(rows, i, j):
    z2 = RationalLattice(((1, 0), (0, 1)))
    group = quotient(z2.full(), Sublattice(z2, tuple(tuple(r) for r in rows)))
    i %= group.order
    j %= group.order
    s = tuple(a + b for a, b in zip(group.reps[i], group.reps[j]))
    assert group.element_of(s) == group.elements[group.add_index(i, j)]
    assert group.add_index(i, group.neg_index(i)) == group.elements.index((0,) * len(group.invariant_factors))


@given(st.fractions(-3, 3, max_denominator=6), st.fractions(-3, 3, max_denominator=6))
def test_min_norm_in_coset_against_brute_force(x, y):
    sub = A2.full()
    best = min_norm_in_coset((x, y), sub)
    # brute force over a box of translates
    cands = [(x + a, y + b) for a, b in itertools.product(range(-6, 7), repeat=2)]
    m = min(A2.norm(c) for c in cands)
    assert A2.norm(best) == m
    assert sub.contains(tuple(p - q for p, q in zip(best, (x, y))))


def test_vectors_up_to_norm_counts_roots():
    vecs = vectors_up_to_norm(A2, 2)
    assert len(vecs) == 7  # zero plus six roots
    assert len([v for v in vectors_up_to_norm(D4, 2) if any(v)]) == 24


def test_intersections():
    z2 = RationalLattice(((1, 0), (0, 1)))
    a = Sublattice(z2, ((2, 0), (0, 1)))
    b = Sublattice(z2, ((1, 0), (0, 3)))
    meet = intersect(a, b)
    assert meet.same_lattice(Sublattice(z2, ((2, 0), (0, 3))))
    half = Sublattice(z2, ((F(1, 2), 0), (0, 1)))
    assert intersect_integral(half).same_lattice(z2.full())


def test_integrality_condition_examples():
    # Affine A2 at level l in the coroot frame, form l * coroot gram; L1 = Z h1, L0 = 3 L1.
    h1 = (F(2, 3), F(1, 3))
    roots = ((F(1), F(0)), (F(0), F(1)))
    for level, expected in [(6, True), (1, False)]:
        form = RationalLattice(tuple(tuple(level * x for x in row) for row in ((2, -1), (-1, 2))))
        l1 = Sublattice(form, (h1,))
        l0 = Sublattice(form, (tuple(3 * x for x in h1),))
        p = Sublattice(form, tuple(tuple(x / level for x in r) for r in roots))
        assert check_integrality_condition(l1, l0, p) is expected


def test_json_round_trip():
    lat = RationalLattice(((F(1, 2), 0), (0, 4)), "demo")
    assert RationalLattice.from_json(lat.to_json()) == lat
    with pytest.raises(LatticeError):
        RationalLattice.from_json({"dim": 3, "gram": [[1]]})


def test_sublattice_requires_independent_rows():
    with pytest.raises(LatticeError):
        Sublattice(A2, ((1, 0), (2, 0)))
    assert math.prod(quotient(A2.full(), A2.full().scaled(2)).invariant_factors) == 4
