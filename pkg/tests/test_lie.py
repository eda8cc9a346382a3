import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from toda_fermion.lie import (
    build_cartan,
    custom_cartan,
    dominant_rep,
    enumerate_Qplus,
    is_weight_of_irrep,
    parse_cartan_type,
    read_cartan_file,
    reflect,
    rho,
    roots_of_height,
)

TYPES = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 2), ("C", 3), ("D", 4)]


def irrep_weights(cartan, mu):
    """Weights of L(mu) as the saturated closure of {mu} under alpha_i-strings."""
    l = cartan.rank
    alpha = [tuple(cartan.C[j][i] for j in range(l)) for i in range(l)]
    seen = {tuple(mu)}
    todo = [tuple(mu)]
    while todo:
        lam = todo.pop()
        for i in range(l):
            for k in range(1, lam[i] + 1):
                nu = tuple(a - k * b for a, b in zip(lam, alpha[i]))
                if nu not in seen:
                    seen.add(nu)
                    todo.append(nu)
    return seen


@pytest.mark.parametrize("kind,rank", TYPES)
def test_symmetrized_form(kind, rank):
    c = build_cartan(kind, rank)
    for i in range(rank):
        assert c.C[i][i] == 2
        for j in range(rank):
            assert c.B[i][j] == c.B[j][i]
            assert c.B[i][j] == c.d[i] * c.C[i][j]


def test_known_cartan_data():
    b2 = build_cartan("B", 2)
    assert b2.C == ((2, -1), (-2, 2))
    assert b2.d == (2, 1)
    c2 = build_cartan("C", 2)
    assert c2.C == ((2, -2), (-1, 2))
    assert parse_cartan_type("A3").C == ((2, -1, 0), (-1, 2, -1), (0, -1, 2))


@pytest.mark.parametrize("kind,rank", TYPES)
def test_eps_coordinates_reproduce_the_form(kind, rank):
    c = build_cartan(kind, rank)
    for i in range(rank):
        e = [0] * rank
        e[i] = 1
        for j in range(rank):
            f = [0] * rank
            f[j] = 1
            assert c.root_pair(e, f) == c.B[i][j]


@pytest.mark.parametrize("kind,rank", TYPES)
def test_rho_pairs_to_half_root_length(kind, rank):
    c = build_cartan(kind, rank)
    for i in range(rank):
        e = [0] * rank
        e[i] = 1
        assert c.rho_pair(e) == Fraction(c.root_pair(e, e), 2)
    assert str(rho(c))


weights = st.lists(st.integers(-4, 4), min_size=2, max_size=2).map(tuple)


@pytest.mark.parametrize("kind", ["A", "B", "C"])
@given(nu=weights)
def test_dominant_rep_is_dominant_idempotent_and_weyl_invariant(kind, nu):
    c = build_cartan(kind, 2)
    dom = dominant_rep(nu, c)
    assert all(x >= 0 for x in dom)
    assert dominant_rep(dom, c) == dom
    for i in range(2):
        assert dominant_rep(reflect(c, nu, i), c) == dom


@pytest.mark.parametrize("kind,rank", [("A", 1), ("A", 2), ("B", 2), ("C", 2), ("A", 3)])
def test_weight_membership_against_string_closure(kind, rank):
    c = build_cartan(kind, rank)
    box = range(-4, 5)
    for mu in itertools.product(range(3), repeat=rank):
        weights_of_mu = irrep_weights(c, mu)
        for nu in itertools.product(box, repeat=rank):
            assert is_weight_of_irrep(mu, nu, c) == (nu in weights_of_mu), (mu, nu)


def test_weight_membership_needs_dominant_highest_weight():
    with pytest.raises(ValueError):
        is_weight_of_irrep((-1, 0), (0, 0), build_cartan("A", 2))


def test_enumerate_Qplus():
    assert enumerate_Qplus((1, 1)) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert len(enumerate_Qplus((2, 1, 3))) == 3 * 2 * 4
    assert roots_of_height(2, 2) == [(0, 2), (1, 1), (2, 0)]


def test_custom_matrix_must_be_symmetric(tmp_path):
    with pytest.raises(ValueError):
        custom_cartan(((2, -1), (-2, 2)))
    path = tmp_path / "c.txt"
    path.write_text("2\n2 -2\n-2 3\n")
    c = read_cartan_file(str(path))
    assert c.B == ((2, -2), (-2, 3))
    bad = tmp_path / "bad.txt"
    bad.write_text("2\n2 -1\n")
    with pytest.raises(ValueError):
        read_cartan_file(str(bad))
