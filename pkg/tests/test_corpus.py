import json

import pytest

from kummerlab.curves import (CurveFileError, corpus_dir, eval_expression, expressions_model, load_corpus,
                              parse_curve_document)
from kummerlab.numring import NumberRing

RECORDS = load_corpus()


def test_corpus_shape():
    ids = [r.identifier for r in RECORDS]
    assert ids == sorted(ids)
    assert sum(i.startswith("comalada") for i in ids) == 8
    assert {"pinch_plus", "pinch_minus", "reject_gaussian", "reject_sqrt2a", "reject_sqrt2b"} <= set(ids)


@pytest.mark.parametrize("rec", [r for r in RECORDS if r.source], ids=lambda r: r.identifier)
def test_expressions_reproduce_coefficients(rec):
    src = dict(rec.source)
    unit = src.pop("unit", None)
    assert expressions_model(rec.ring, unit, src) == rec.model


@pytest.mark.parametrize("rec", [r for r in RECORDS if "j" in r.expected and r.source], ids=lambda r: r.identifier)
def test_j_invariants(rec):
    unit = eval_expression(rec.source["unit"], rec.ring) if "unit" in rec.source else None
    assert rec.model.invariants.j_value() == eval_expression(rec.expected["j"], rec.ring, unit)


def test_files_roundtrip():
    for entry in corpus_dir().iterdir():
        if entry.name.endswith(".json"):
            doc = json.loads(entry.read_text())
            rec = parse_curve_document(doc)
            assert rec.to_json()["curve"] == doc["curve"]


def test_expression_evaluator():
    R = NumberRing.quadratic(65)
    e = eval_expression("8+s", R)
    assert e * e - 16 * e == 1  # root of T^2 - 16 T - 1: norm -1, trace 16
    assert eval_expression("e**-1", R, e) == 1 / e
    assert eval_expression("-(2*s)/2", R) == -R.sqrt_m()
    for bad in ("__import__('os')", "2**s", "x + 1", "1 +", "abs(2)"):
        with pytest.raises(CurveFileError):
            eval_expression(bad, R, e)
