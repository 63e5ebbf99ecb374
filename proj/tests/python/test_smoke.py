import json

import pytest

import subdivlab as sl


def test_corpus_ids():
    ids = sl.corpus_ids()
    assert len(ids) == 5
    assert "ex1" in ids
    doc = json.loads(sl.corpus_text("ex1"))
    assert doc["mask"]["r"] == 2


def test_analyze_example():
    doc = json.loads(sl.analyze("ex1", is_example=True))
    assert doc["sr"] == 4
    assert doc["spectral"]["cond_a0"] is True


def test_subdivide_grid():
    csv = sl.subdivide("ex1", is_example=True, level=3)
    lines = csv.strip().split("\n")
    assert lines[0] == "x,value1,value2"
    assert len(lines) == 1 + 17  # support [-1, 1] at spacing 1/8


def test_rates_accepts_uvec_json():
    u = {"support": [0, 0], "coeff": [["1/3", "2/3"]]}
    csv = sl.rates("ex1", is_example=True, u=json.dumps(u))
    assert csv.startswith("n,E,neg_log2_E,running_slope")
    assert "slope=" in csv


def test_errors_translate():
    with pytest.raises(RuntimeError):
        sl.corpus_text("ex99")
    with pytest.raises(ValueError):
        sl.analyze("ex1", is_example=True, params="=3")
