import pytest

from toda_fermion.decompositions import (
    CONJECTURAL,
    DECOMPOSITIONS,
    SL2_KINDS,
    check_decomposition,
    closed_X0,
    multi_corner_X,
    sl2_closed,
)
from toda_fermion.fermionic import CornerProfile, system_for
from toda_fermion.kernel import Monomial, RationalFn, inv_pochhammer, qbinom

A2 = ((2, -1), (-1, 2))
SL2 = ((2,),)


def holds(which, **kw):
    rep = check_decomposition(which, **kw)
    return rep.holds


@pytest.mark.parametrize("m", range(1, 7))
def test_sl2_semi_infinite_closed_form(m):
    assert sl2_closed("I", m)[1].holds is True


@pytest.mark.parametrize("m", range(1, 5))
def test_sl2_single_corner_closed_form_with_symbolic_angle(m):
    assert sl2_closed("X0", m, "w1")[1].holds is True


@pytest.mark.parametrize("m", range(1, 4))
@pytest.mark.parametrize("nu", [0, 1, 2])
def test_sl2_single_corner_closed_form_with_integer_angle(m, nu):
    # an integer angle reduces the q-binomial and may cancel poles
    prof = CornerProfile.single(0, (nu,))
    assert system_for(SL2).X(prof, (m,)) == closed_X0(m, nu)


def test_single_corner_closed_form_small_case():
    # m = 1: [nu, 1] / ((1 - z^-1)(1 - q^nu z))
    z = Monomial.symbol("z1")
    w = Monomial.symbol("w1")
    expected = qbinom("w1", 1) * inv_pochhammer(z.inverse(), 1) * inv_pochhammer(w * z, 1)
    assert closed_X0(1, "w1") == expected


@pytest.mark.parametrize("kind", SL2_KINDS)
@pytest.mark.parametrize("m", [1, 2, 3])
def test_sl2_closed_form_family(kind, m):
    assert sl2_closed(kind, m)[1].holds is True


@pytest.mark.parametrize("k", range(4))
def test_one_particle_split(k):
    assert holds("one_particle_split", k=k)


@pytest.mark.parametrize("k", range(4))
@pytest.mark.parametrize("c", [1, 2, 3])
def test_two_particle_split_with_corrected_shift(k, c):
    assert holds("two_particle_split", C=((c,),), k=k)


@pytest.mark.parametrize("k", range(4))
def test_two_particle_split_as_printed_needs_c_equal_one(k):
    assert holds("two_particle_split", C=((1,),), k=k, literal=True)
    assert not holds("two_particle_split", C=((2,),), k=k, literal=True)
    assert not holds("two_particle_split", C=((3,),), k=k, literal=True)


def test_final_display():
    assert holds("final_display")


@pytest.mark.parametrize("C,m", [(SL2, (1,)), (SL2, (2,)), (SL2, (3,)), (A2, (1, 1)), (A2, (2, 1))])
@pytest.mark.parametrize("r,s", [(0, 0), (0, 1), (-1, 2)])
def test_interval_decompositions(C, m, r, s):
    assert holds("quasi_classical", C=C, m=m, r=r, s=s)
    assert holds("two_groups", C=C, m=m, r=r, s=s)


@pytest.mark.parametrize("C,m", [(SL2, (2,)), (SL2, (3,)), (A2, (1, 1))])
def test_degenerate_intervals(C, m):
    assert holds("r_eq_s", C=C, m=m)
    assert holds("r_eq_s_plus_1", C=C, m=m)


@pytest.mark.parametrize("C,m", [(SL2, (1,)), (SL2, (2,)), (SL2, (3,)), (A2, (1, 1)), (A2, (2, 1))])
def test_corner_decompositions(C, m):
    for k in (0, 1, 2):
        assert holds("J_JX", C=C, m=m, k=k)
        assert holds("two_corner", C=C, m=m, k=k)
        assert holds("relation2", C=C, m=m, k=k)
        assert holds("relation3", C=C, m=m, k=k)
    assert holds("J_JX_kminus1", C=C, m=m)
    assert holds("X_XX", C=C, m=m)
    assert holds("X1", C=C, m=m)
    assert holds("X2", C=C, m=m)
    assert holds("X_symmetry", C=C, m=m)


@pytest.mark.parametrize("C,m", [(SL2, (1,)), (SL2, (2,)), (SL2, (3,)), (A2, (1, 1))])
def test_two_corner_decomposition_as_printed_fails(C, m):
    assert not holds("X_XX", C=C, m=m, literal=True)
    for k in (1, 2):
        assert not holds("two_corner", C=C, m=m, k=k, literal=True)


@pytest.mark.parametrize("ks", [(0,), (0, 1), (0, 0), (0, 1, 2), (-1, 1, 1)])
@pytest.mark.parametrize("m", [1, 2])
def test_multi_corner_product_formula(ks, m):
    if m > len(ks):
        assert multi_corner_X(ks, m) == RationalFn.zero()
        return
    assert holds("multi_corner_X", m=(m,), ks=ks)
    assert holds("multi_corner_I", m=(m,), ks=ks)


def test_registry_is_complete_and_rejects_unknown_names():
    assert CONJECTURAL <= set(DECOMPOSITIONS)
    with pytest.raises(ValueError):
        check_decomposition("no_such_identity")
    with pytest.raises(ValueError):
        check_decomposition("multi_corner_X", C=A2, m=(1, 1), ks=(0,))


def test_report_records_both_sides_and_conjectural_flag():
    rep = check_decomposition("J_JX", m=(2,), k=1)
    assert rep.notes["conjectural"] is True
    data = rep.to_json()
    assert data["holds"] is True and data["lhs"] and data["rhs"]
