import random
from itertools import combinations

import pytest
from hypothesis import given, settings

from dposet import config
from dposet import constructors as c
from dposet import hibi as h
from dposet import poset as ps
from dposet.errors import NonTerminating, NotCompatible, UnknownFilterVariable
from strategies import double_posets, posets


def test_basis_sizes():
    assert len(h.hibi_basis(ps.antichain(2)).basis) == 1
    assert len(h.double_hibi_basis(ps.induced_double(ps.antichain(2))).basis) == 9
    assert h.hibi_basis(ps.chain(4)).basis == ()


def test_toric_membership():
    P = ps.antichain(2)
    S = h.hibi_basis(P)
    a, b = 0b01, 0b10
    assert S.contains(h.Binomial(h.monomial((1, a), (1, b)), h.monomial((1, 0), (1, a | b))))
    assert not S.contains(h.Binomial(h.monomial((1, a)), h.monomial((1, b))))
    with pytest.raises(UnknownFilterVariable):
        S.image(h.monomial((-1, a)))


@settings(max_examples=30, deadline=None)
@given(posets(4))
def test_hibi_basis_certifies(P):
    S = h.hibi_basis(P)
    assert all(S.contains(b) for b in S.basis)
    assert h.certify(S)


@settings(max_examples=30, deadline=None)
@given(double_posets(4, compatible=True))
def test_double_bases_certify(dP):
    for S in (h.double_hibi_basis(dP), h.tchain_basis(dP)):
        assert all(S.contains(b) for b in S.basis)
        assert h.certify(S)


def test_tchain_basis_needs_no_compatibility():
    dP = ps.opposite_pair(2)
    assert h.certify(h.tchain_basis(dP))
    with pytest.raises(NotCompatible):
        h.double_hibi_basis(dP)


@pytest.mark.parametrize("mode", ["drop", "swap"])
def test_corrupted_bases_fail(mode):
    rng = random.Random(7)
    S = h.double_hibi_basis(ps.xw())
    failed = 0
    for _ in range(5):
        failed += not h.certify(h.corrupt(S, rng, mode))
    assert failed == 5


@settings(max_examples=20, deadline=None)
@given(double_posets(3, compatible=True))
def test_normal_form_is_idempotent_and_order_stable(dP):
    S = h.double_hibi_basis(dP)
    shuffled = h.BinomialSystem(S.kind, S.dP, S.variables, tuple(reversed(S.basis)))
    for u, v in combinations(S.variables, 2):
        m = h.monomial(u, v)
        nf = h.normal_form(m, S)
        (t,) = nf
        assert h.normal_form(t, S) == nf
        assert h.normal_form(m, shuffled) == nf
        assert S.image(t) == S.image(m)


def test_normal_form_of_basis_element_vanishes():
    S = h.hibi_basis(ps.antichain(3))
    assert all(h.normal_form(b, S) == {} for b in S.basis)


def test_rewrite_cap():
    S = h.hibi_basis(ps.antichain(3))
    m = h.monomial(*S.variables)
    with config.use_budget(max_rewrites=0):
        with pytest.raises(NonTerminating):
            h.normal_form(m, S)


@pytest.mark.parametrize("which", ["tord", "tchain"])
def test_initial_complex_of_xw(which):
    assert h.initial_complex_match(ps.xw(), which)


@settings(max_examples=25, deadline=None)
@given(double_posets(5, compatible=True))
def test_initial_complex_matches_non_interfering_complex(dP):
    assert h.initial_complex_match(dP, "tord")


@pytest.mark.parametrize("spec", ["chain2", "mixed2", "altchain2", "antichain3"])
def test_binomial_face_test_matches_sublattice_test(spec):
    dP = {
        "chain2": ps.induced_double(ps.chain(2)),
        "mixed2": ps.mixed(2),
        "altchain2": ps.alternating_chain_poset(2),
        "antichain3": ps.induced_double(ps.antichain(3)),
    }[spec]
    S = h.double_hibi_basis(dP)
    for r in range(4):
        for U in combinations(S.variables, r):
            Lp = [F for s, F in U if s > 0]
            Lm = [F for s, F in U if s < 0]
            assert h.binomial_face_test(S, U) == c.sublattice_face_test(dP, Lp, Lm).is_face


def test_reducedness_is_only_observed():
    assert h.is_reduced(h.hibi_basis(ps.x_poset()))
    assert isinstance(h.is_reduced(h.double_hibi_basis(ps.xw())), bool)
