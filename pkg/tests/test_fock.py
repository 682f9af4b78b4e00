from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from simplecurrents.fock import (
    E_minus,
    E_plus,
    FockError,
    FockSpace,
    FockVector,
    deformed_product,
    delta_apply,
    heis_mode,
    heis_vector,
    lattice_vector,
    vacuum,
    vertex_mode,
    vertex_series,
    virasoro,
    virasoro_L0,
    virasoro_mode,
)

F = Fraction
rationals = st.fractions(-2, 2, max_denominator=6)


def test_rejects_bad_lattices():
    for gram in ([[1]], [[2, 1], [1, 1]], [[-2]], [[2, 3], [3, 2]]):
        with pytest.raises(FockError):
            FockSpace(gram)


def test_conformal_weights(a2_space):
    s = a2_space
    assert not virasoro_L0(s, vacuum(s))
    h = heis_vector(s, (1, 0))
    assert virasoro_L0(s, h) == h
    g = lattice_vector(s, (1, 1))  # norm 2
    assert virasoro_L0(s, g) == g
    g = lattice_vector(s, (2, 1))  # norm 6
    assert virasoro_L0(s, g) == 3 * g


@given(st.integers(0, 3))
def test_basis_vectors_are_l0_eigenvectors(max_degree):
    space = FockSpace([[2]])
    for key in space.basis(max_degree):
        v = FockVector.from_dict(space, {key: 1})
        assert virasoro_L0(space, v) == v * space.degree(key)


def test_heisenberg_brackets(a2_space):
    s = a2_space
    one = vacuum(s)
    h, k = (1, 0), (0, 1)
    assert heis_mode(s, h, 1, heis_vector(s, k)) == one * s.pair(h, k)
    assert heis_mode(s, h, 2, heis_vector(s, k, 2)) == one * (2 * s.pair(h, k))
    assert not heis_mode(s, h, 0, one)
    assert heis_mode(s, h, 0, lattice_vector(s, (1, 0))) == lattice_vector(s, (1, 0)) * s.pair(h, (1, 0))


def test_virasoro_central_charge(a2_space):
    # L(2) omega = c/2 * vacuum with c = rank
    s = a2_space
    assert virasoro_mode(s, 2, virasoro(s)) == vacuum(s) * F(s.rank, 2)
    assert not virasoro_mode(s, 1, virasoro(s))


def test_exponential_operators_on_vacuum(a1_space):
    s = a1_space
    one = vacuum(s)
    series = E_minus(s, (1,), 2).apply(one)
    assert series.coefficient(0) == one
    assert series.coefficient(1) == heis_vector(s, (1,))
    assert E_plus(s, (1,)).apply(one).coefficients == ((0, one),)


@given(rationals)
def test_delta_closed_forms_a1(a):
    s = FockSpace([[2]])
    one = vacuum(s)
    beta = heis_vector(s, (1,))
    got = delta_apply(s, (a,), beta)
    assert got.coefficient(0) == beta
    assert got.coefficient(-1) == one * (2 * a)
    got = delta_apply(s, (a,), virasoro(s))
    assert got.coefficient(0) == virasoro(s)
    assert got.coefficient(-1) == heis_vector(s, (a,))
    assert got.coefficient(-2) == one * a * a  # <a, a>/2 with <1, 1> = 2
    assert delta_apply(s, (a,), one).coefficients == ((0, one),)


@given(rationals, rationals)
def test_delta_closed_forms_a2(a, b):
    s = FockSpace([[2, -1], [-1, 2]])
    alpha = (a, b)
    one = vacuum(s)
    for direction in ((1, 0), (0, 1)):
        got = delta_apply(s, alpha, heis_vector(s, direction))
        assert got.coefficient(-1) == one * s.pair(alpha, direction)
    got = delta_apply(s, alpha, virasoro(s))
    assert got.coefficient(-2) == one * (s.pair(alpha, alpha) / 2)


def test_vacuum_is_identity_field(a1_space):
    s = a1_space
    v = lattice_vector(s, (1,), [(1, 0)])
    got = vertex_series(s, vacuum(s), v, 3)
    assert got.coefficients == ((0, v),)


def test_lattice_product_leading_term(a1_space):
    s = a1_space
    got = vertex_series(s, lattice_vector(s, (1,)), lattice_vector(s, (-1,)), 0)
    lowest = got.exponents[0]
    assert lowest == -2  # <alpha, -alpha>
    assert got.coefficient(-2) == vacuum(s) * s.eps((1,), (-1,))


@pytest.mark.parametrize("ukey", [((), (1,)), (((1, 0),), (0,)), (((2, 0),), (1,))])
def test_translation_derivative(a1_space, ukey):
    s = a1_space
    u = lattice_vector(s, ukey[1], ukey[0])
    du = FockVector.from_dict(s, s.L_minus1(u.as_dict))
    v = lattice_vector(s, (-1,), [(1, 0)])
    for n in range(-3, 3):
        # (L(-1)u)_n = -n u_{n-1}
        assert vertex_mode(s, du, n, v) == vertex_mode(s, u, n - 1, v) * (-n)


def test_undeformed_product_is_vertex_operator(a1_space):
    s = a1_space
    u, v = heis_vector(s, (1,)), lattice_vector(s, (1,))
    zero = (0,)
    a = deformed_product(s, u, zero, v, zero, 3)
    b = vertex_series(s, u, v, 3)
    for e in a.exponents:
        assert a.coefficient(e) == b.coefficient(e)


def test_key_encoding_round_trip(a2_space):
    s = a2_space
    key = s.key([(1, 0), (1, 0), (3, 1)], (1, -1))
    assert s.gamma(key) == s.vec((1, -1))
    assert sorted(s.modes(key)) == [(1, 0), (1, 0), (3, 1)]
    assert s.degree(key) == 5 + 3  # modes 1+1+3, norm 6 gives 3
    with pytest.raises(FockError):
        s.key([(0, 0)])
