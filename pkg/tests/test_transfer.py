from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dposet import constructors as c
from dposet import geometry as g
from dposet import poset as ps
from dposet import transfer as t
from dposet.errors import NotCompatible
from strategies import double_posets, points, posets


def convex_point(vertices, weights):
    total = sum(weights) or 1
    n = len(vertices[0])
    return tuple(sum(Fraction(w, total) * v[i] for w, v in zip(weights, vertices)) for i in range(n))


weights = st.lists(st.integers(0, 5), min_size=1, max_size=40)


@settings(max_examples=40)
@given(posets(5, min_n=1), weights)
def test_transfer_maps_order_polytope_onto_chain_polytope(P, w):
    O, C = c.order_polytope(P), c.chain_polytope(P)
    f = convex_point(O.vertices, (w * len(O.vertices))[: len(O.vertices)])
    phi = t.transfer(P, f)
    assert C.contains(phi)
    assert t.inverse_transfer(P, phi) == f


@settings(max_examples=60)
@given(double_posets(4, min_n=1, compatible=True), st.data())
def test_psi_round_trip(dP, data):
    x = data.draw(points(dP.n))
    assert t.psi(dP, t.psi_inverse(dP, x)) == x
    assert t.psi_inverse(dP, t.psi(dP, x)) == x


@settings(max_examples=30, deadline=None)
@given(double_posets(4, min_n=1, compatible=True), weights)
def test_psi_lift_carries_tchain_into_tord(dP, w):
    TO, TC = c.double_order_polytope(dP), c.double_chain_polytope(dP)
    x = convex_point(TC.vertices, (w * len(TC.vertices))[: len(TC.vertices)])
    y = t.psi_lift(dP, x)
    assert TO.contains(y)
    assert t.psi_lift_inverse(dP, y) == x


def test_split_has_disjoint_support():
    gp, gm = t.split((1, -2, 0, Fraction(1, 2)))
    assert gp == (1, 0, 0, Fraction(1, 2)) and gm == (0, 2, 0, 0)


@settings(max_examples=25, deadline=None)
@given(double_posets(4, min_n=1, compatible=True))
def test_non_interfering_complex_is_unimodular_flag_triangulation(dP):
    K = t.non_interfering_complex(dP)
    assert K.is_flag()
    assert all(len(cell) == dP.n + 2 for cell in K.realize("tchain"))
    for which, T in (("tchain", c.double_chain_polytope(dP)), ("tord", c.double_order_polytope(dP))):
        cells = t.triangulate(dP, which)
        vols = t.cell_volumes(dP, cells)
        assert set(vols) == {1}
        assert len(cells) == g.normalized_volume(T)


def test_xw_triangulation():
    K = t.non_interfering_complex(ps.xw())
    assert K.n_cells == 128 and K.dimension == 6
    assert all(S.bit_count() == 2 for S in K.minimal_nonfaces(3))


def test_tord_triangulation_needs_compatibility():
    dP = ps.opposite_pair(2)
    with pytest.raises(NotCompatible):
        t.triangulate(dP, "tord")
    with pytest.raises(NotCompatible):
        t.psi_inverse(dP, (0, 0))
    cells = t.triangulate(dP, "tchain")
    assert len(cells) == 4 and set(t.cell_volumes(dP, cells)) == {1}
    # the prism TOrd has Euclidean volume 4 but only 3 minimal simplices of the lattice
    prism = g.with_hull(c.double_order_polytope(dP))
    assert g.volume(prism) == 4 and g.normalized_volume(prism) == 3
    with pytest.raises(ValueError):
        t.triangulate(ps.xw(), "cube")


@settings(max_examples=30)
@given(posets(5, min_n=1))
def test_canonical_triangulation_counts_linear_extensions(P):
    assert len(t.canonical_order_triangulation(P)) == ps.linear_extension_count(P)
    for S in t.canonical_order_triangulation(P, chain_side=True):
        assert g.simplex_nvol(S) == 1
