import json
import math

import pytest

import cantorforge as cf


def test_parse_and_entries():
    spec = cf.parse_spec("2;cycle:3,4")
    assert [spec.entry(i) for i in range(1, 6)] == [2, 3, 4, 3, 4]
    assert cf.parse_spec("2,inf").entry(2) == math.inf
    assert str(cf.parse_spec("2;const:2")) == "2"


def test_spec_errors():
    with pytest.raises(cf.SpecValueError):
        cf.parse_spec("1,2")
    with pytest.raises(cf.SpecSyntaxError):
        cf.parse_spec("2;wave:3")
    assert issubclass(cf.SpecSyntaxError, cf.CantorforgeError)


def test_stage_counts():
    engine = cf.Construction(cf.parse_spec("2"))
    assert [engine.stage_size(k) for k in range(1, 8)] == [1, 1, 13, 13, 169, 169, 2197]
    assert len(engine.children_of(2, 1)) == 13
    with pytest.raises(cf.NotFoundError):
        engine.component_at(3, 14)


def test_build_stages_matches_engine():
    spec = cf.parse_spec("3,inf")
    engine = cf.Construction(spec)
    for stage in cf.build_stages(spec, 5):
        for c in stage:
            assert engine.component_at(c.stage, c.index) == c


def test_profile_and_classification():
    spec = cf.parse_spec("4")
    engine = cf.Construction(spec)
    end = cf.dense_point(engine, 1)
    profile = cf.genus_profile(engine, end, 9)
    assert profile["genera"] == [2, 3, 3, 4, 4, 4, 4, 4, 4]
    assert profile["liminf"] == 4
    assert cf.local_genus_upper(engine, end, 9) == 4

    hop = cf.chain_hop_end("first")
    assert cf.local_genus_upper(engine, hop, 7) == 2
    assert cf.classify(spec, hop)["exact"] == (1, 2)
    two = cf.Construction(cf.parse_spec("2"))
    with pytest.raises(cf.DepthTooShallowError):
        cf.local_genus_upper(two, cf.dense_point(two, 14), 3)


def test_density_and_verify():
    engine = cf.Construction(cf.parse_spec("2,3"))
    assert cf.density_check(engine, 5)["passed"]
    report = cf.verify(cf.parse_spec("2,3"), 5)
    assert report["passed"] and report["first_failure"] is None


def test_document_round_trip():
    text = cf.build_document(cf.parse_spec("2,3,inf"), 5)
    assert cf.canonicalize_document(text) == text
    doc = json.loads(text)
    assert [s["m"] for s in doc["stages"]] == [1, 1, 13, 13, 181]


def test_cli_entry():
    code, out, _ = cf.run_cli(["ends", "--spec", "2", "--labels", "1", "--depth", "3"])
    assert code == 0 and out.startswith("end\t")
    code, _, _ = cf.run_cli(["build", "--spec", "1", "--stages", "3"])
    assert code == 2
