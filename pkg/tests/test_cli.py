import io
import json

import pytest

from dposet import registry
from dposet.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_fvector_of_xw():
    code, out, _ = call("fvector", "--gen", "xw", "--polytope", "tord")
    assert code == 0 and out.strip() == "21,112,247,263,135,28"
    code, out, _ = call("--format", "json", "fvector", "--gen", "xw", "--polytope", "tord")
    assert json.loads(out) == [21, 112, 247, 263, 135, 28]


def test_volumes():
    assert call("volume", "--gen", "comb:3", "--polytope", "tchain", "--normalized")[1].strip() == "384"
    assert call("volume", "--gen", "xw", "--polytope", "tord")[1].strip() == "512/45"
    assert json.loads(call("--format", "json", "volume", "--gen", "xw", "--polytope", "tord")[1]) == [512, 45]


def test_compatibility_check_prints_witness():
    code, out, _ = call("check", "compatible", "--gen", "opp-pair:2")
    assert code == 0 and out == "false\ncycle: 2 <- 1 <+ 2\n"
    assert call("check", "compatible", "--gen", "xw")[1].startswith("true\nextension:")


def test_vertex_formats():
    code, out, _ = call("--format", "csv", "vertices", "--gen", "chain:1", "--polytope", "order")
    assert out == "vertex,tag\n[0],filter {}\n[1],filter {1}\n"
    rows = json.loads(call("--format", "json", "vertices", "--gen", "chain:1", "--polytope", "tord")[1])
    assert [r["vertex"] for r in rows] == [[0, 1], [2, 1], [0, -1], [-2, -1]]


def test_triangulate_and_ehrhart():
    assert call("triangulate", "--gen", "xw", "--count")[1].strip() == "128"
    code, out, _ = call("--format", "json", "ehrhart", "--gen", "chain:2", "--polytope", "order")
    assert code == 0 and json.loads(out)


def test_transfer_point():
    code, out, _ = call("transfer", "--gen", "chain:2", "--map", "phi", "--point", '["1/2", 1]')
    assert code == 0 and out.strip() == "1/2,1/2"


def test_groebner_and_antiblock():
    code, out, _ = call("--format", "json", "groebner", "--gen", "antichain:2", "--ideal", "tord", "--verify")
    data = {row["item"]: row["value"] for row in json.loads(out)}
    assert data["binomials"] == 9 and data["groebner"] is True
    code, out, _ = call("antiblock", "count", "--gen", "chain:1", "--a", "2", "--b", "3")
    assert "cells   6" in out and "direct  6" in out


def test_file_input(tmp_path):
    path = tmp_path / "p.json"
    path.write_text(registry.dumps(registry.generate("xw")))
    assert call("fvector", "--file", str(path), "--polytope", "tord")[1].strip() == "21,112,247,263,135,28"


def test_examples_listing():
    out = call("examples")[1]
    assert "xw" in out and "opp-pair" in out


def test_conjecture_scan_is_labelled_exploratory():
    code, out, _ = call("conjecture-scan", "--max-n", "2", "--altchain", "3")
    assert code == 0 and out.startswith("exploratory scan, not a proof")
    assert "induced counterexamples: 0 of 3" in out
    assert "extension counterexamples: 2 of 5: altchain:2, altchain:3" in out


@pytest.mark.parametrize(
    "argv,code,prefix",
    [
        (("fvector", "--gen", "nothing"), 2, "UnknownGenerator"),
        (("fvector", "--polytope", "tord"), 1, ""),
        (("frobnicate",), 1, ""),
        (("fvector", "--file", "/nonexistent.json"), 1, ""),
        (("facets", "--gen", "opp-pair:2", "--polytope", "dord"), 2, "NotCompatible"),
        (("--budget", "max_items=5", "fvector", "--gen", "xw", "--polytope", "tord"), 2, "TooLarge"),
        (("--budget", "bogus=1", "fvector", "--gen", "xw"), 1, ""),
    ],
)
def test_exit_codes(argv, code, prefix):
    got, _, err = call(*argv)
    assert got == code
    assert err.startswith(prefix)
