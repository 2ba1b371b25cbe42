import pytest
from hypothesis import given

from dposet import graphs
from dposet import poset as ps
from dposet import registry as r
from dposet.errors import CycleError, UnknownGenerator
from strategies import double_posets


@pytest.mark.parametrize("spec", r.EXAMPLES)
def test_examples_round_trip_through_json(spec):
    dP = r.generate(spec)
    back = r.loads(r.dumps(dP))
    assert back == dP
    assert r.describe(spec)


@given(double_posets(5))
def test_random_double_posets_round_trip(dP):
    assert r.from_json(r.to_json(dP)) == dP


def test_induced_double_posets_omit_minus():
    data = r.to_json(r.generate("chain:2"))
    assert "minus" not in data
    assert r.from_json(data).is_induced


def test_compatibility_of_examples():
    assert ps.is_compatible(r.generate("xw"))
    assert not ps.is_compatible(r.generate("opp-pair:2"))
    assert r.generate("altchain:3").n == 4


@pytest.mark.parametrize("spec", ["cube", "chain:x", "chain:-1", "perm:1,a", "nothing:3"])
def test_bad_generators(spec):
    with pytest.raises(UnknownGenerator):
        r.generate(spec)


def test_bad_json_relations():
    with pytest.raises(CycleError):
        r.from_json({"elements": ["a", "b"], "plus": [["a", "b"], ["b", "a"]]})


def test_graph_json():
    G = graphs.cycle_graph(5)
    assert r.graph_from_json(r.graph_to_json(G)) == G
