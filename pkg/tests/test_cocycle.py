import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from simplecurrents.cocycle import (
    BilinearRootTable,
    GradedIndex,
    bar_C_exponent,
    bilinear_phase,
    build_A1,
    comm_C,
    comm_exponent,
    commutator_property_failures,
    eta,
    eta_property_failures,
    h_table,
    mod2,
    verify_2cocycle_slice,
    verify_A0_cocycle,
)
from simplecurrents.exact import root_of_unity
from simplecurrents.extend import ExtensionSpec, grading_data
from simplecurrents.lattice import RationalLattice

F = Fraction
FORM = RationalLattice(((2, -1), (-1, 2)))
rat = st.fractions(-2, 2, max_denominator=4)
vec2 = st.tuples(rat, rat)
indices = st.builds(GradedIndex, vec2, vec2)


def test_grading_form_examples():
    a1 = RationalLattice(((2,),))
    zero = GradedIndex.zero(1)
    assert eta(zero, zero, a1) == 0
    root = GradedIndex((1,), (0,))
    assert eta(root, root, a1) == 0
    # affine B_n at level one: <h_n, h_n> = 1
    b = RationalLattice(((1,),))
    spin = GradedIndex((1,), (0,))
    assert eta(spin, spin, b) == 1


def test_commutator_examples():
    form = RationalLattice(((1,),))
    a = GradedIndex((F(1, 2),), (0,))
    b = GradedIndex((0,), (1,))
    assert comm_C(a, a, form) == 1
    value = comm_C(a, b, form)
    assert value == root_of_unity(F(1, 2))
    assert value * value == -1
    assert comm_C(b, a, form) * value == 1


@given(st.lists(indices, min_size=1, max_size=3))
def test_grading_form_and_commutator_properties(elements):
    assert not eta_property_failures(elements, FORM)
    assert not commutator_property_failures(lambda a, b: comm_exponent(a, b, FORM), elements, GradedIndex.__add__)


def test_square_root_table():
    # rank one with A0(alpha, alpha) = -1: the principal square root is i
    table = build_A1([(F(1),)], [(F(1),)], lambda x, y: x[0] * y[0])
    assert table.a1((1,), (1,)) == root_of_unity(F(1, 2))
    assert table.c1_exponent((1,), (1,)) == 0
    trivial = BilinearRootTable.trivial([(F(1),)])
    assert trivial.a1((3,), (5,)) == 1


@given(st.integers(1, 4), st.integers(-3, 3), st.integers(-3, 3))
def test_square_root_squares_to_phase(m, x, y):
    # L = Z b, L0 = Z (m b); A1 must square to A0 on L0
    a0 = lambda u, v: mod2(u[0] * v[0] / m**2)  # noqa: E731
    table = build_A1([(F(1),)], [(F(m),)], a0)
    u, v = (F(m * x),), (F(m * y),)
    assert mod2(2 * table.a1_exponent(u, v) - a0(u, v)) == 0


def test_bar_c_with_trivial_table_is_c():
    table = BilinearRootTable.trivial([(F(1, 3), F(0)), (F(0), F(1, 2))])
    a, b = GradedIndex((F(1, 3), 0), (0, 1)), GradedIndex((0, F(1, 2)), (1, 0))
    assert bar_C_exponent(a, b, FORM, table) == comm_exponent(a, b, FORM)


def test_a0_cocycle_detects_perturbation():
    box = list(itertools.product(range(-1, 2), repeat=2))
    triples = list(itertools.product(box, repeat=3))
    bilinear = bilinear_phase(FORM, [[1, 0], [1, 0]])
    assert verify_A0_cocycle(lambda x, y: F(0), triples)
    assert verify_A0_cocycle(bilinear, triples)

    def perturbed(x, y):
        return mod2(bilinear(x, y) + (1 if (tuple(x), tuple(y)) == ((1, 0), (1, 0)) else 0))

    assert not verify_A0_cocycle(perturbed, triples)


@pytest.mark.parametrize(
    "spec",
    [
        ExtensionSpec.lattice([[2]], [[F(1, 2)]]),
        ExtensionSpec.lattice([[2, 0], [0, 2]], [[F(1, 2), 0], [0, F(1, 2)]]),
        ExtensionSpec.affine("D4", 1),
        ExtensionSpec.affine("A3", 1),
    ],
)
def test_three_cocycle_tables(spec):
    data = grading_data(spec)
    group = data.group
    n = group.order
    table = h_table(group, spec.form, data.root_table)
    assert table[0][0][0] == 0
    for i, j, k in itertools.product(range(n), repeat=3):
        assert table[i][j][k] == table[j][i][k]
    assert all(verify_2cocycle_slice(table, k, group) for k in range(n))


def test_z2_table_by_substitution():
    # Oracle: reps 0 and alpha/2 with <alpha/2, alpha/2> = 1/2; only (1, 1, k) has mu = alpha.
    spec = ExtensionSpec.lattice([[2]], [[F(1, 2)]])
    data = grading_data(spec)
    table = h_table(data.group, spec.form, data.root_table)
    one = data.group.reps.index((F(1, 2),)) if (F(1, 2),) in data.group.reps else 1
    rep = data.group.reps[one]
    mu = tuple(2 * x for x in rep)
    expected = mod2(-spec.form.pair(mu, rep) + 2 * data.root_table.c1_exponent(mu, rep))
    assert table[one][one][one] == expected
    assert table[0][one][one] == table[one][0][one] == 0
