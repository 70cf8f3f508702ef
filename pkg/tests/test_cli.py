import json
import subprocess
import sys

import pytest

from kummerlab.cli import main, run
from kummerlab.curves import corpus_dir

CORPUS = corpus_dir()


def path(name):
    return str(CORPUS / f"{name}.json")


def write(tmp_path, doc, name="curve.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(p)


PINCH_DOC = {"field": {"kind": "quadratic", "m": -3},
             "curve": {"a1": [0, 0], "a2": [1, 1], "a3": [0, 0], "a4": [0, 1], "a6": [0, 0]}}


def test_invariants_json(tmp_path):
    report, code, text = run(["invariants", write(tmp_path, PINCH_DOC), "--format", "json"])
    assert code == 0
    (r,) = report["results"]
    assert r["disc"] == [16, 0] and r["c4"] == [0, 0]
    assert json.loads(text) == report


def test_tate_and_effmodel():
    report, code, _ = run(["tate", path("pinch_plus"), "--format", "json"])
    assert code == 0
    two = [r for r in report["results"] if r["prime"].startswith("P(2")]
    assert two and two[0]["symbol"] == "II" and two[0]["delta_wild"] == 2
    assert any("delta = 2" in n for n in report["notes"])
    report, code, _ = run(["effmodel", path("pinch_minus"), "--format", "json"])
    assert report["results"][0]["effective_model"]["fiber_type"] == "Mu2"


def test_admissible_exit_codes():
    assert run(["admissible", path("pinch_plus")])[1] == 0
    report, code, text = run(["admissible", path("reject_gaussian")])
    assert code == 1 and "FAIL" in text
    report, code, _ = run(["admissible", path("reject_sqrt2a"), "--format", "json"])
    assert code == 1 and any("b2*a4 + b6" in n for n in report["notes"])


def test_prime_selection():
    report, code, _ = run(["tate", path("comalada_65b"), "--prime", "0", "--format", "json"])
    assert code == 0 and len(report["results"]) == 1
    assert run(["tate", path("comalada_65b"), "--prime", "99"])[1] == 2
    assert run(["tate", path("comalada_65b"), "--prime", "two"])[1] == 2


def test_pair_and_checklist():
    assert run(["pair", path("comalada_41a"), path("comalada_41b")])[1] == 0
    report, code, _ = run(["checklist", path("pinch_plus"), path("pinch_minus"), "--format", "json"])
    assert code == 0 and report["results"][0]["recommendation"] == "tame cubic"
    report, code, _ = run(["checklist", path("reject_sqrt2a"), path("reject_sqrt2b"), "--format", "json"])
    assert code == 1 and report["results"][0]["failures"]
    assert run(["pair", path("pinch_plus"), path("comalada_28a")])[1] == 2


def test_predict():
    report, code, _ = run(["predict", "--fiber-type", "Alpha2", "--n", "2", "--format", "json"])
    assert code == 0 and report["results"][0]["rank"] == 20
    assert run(["predict", "--fiber-type", "Alpha2", "--p", "3"])[1] == 2
    assert run(["predict"])[1] == 2
    assert run(["predict", path("pinch_plus")])[1] == 2
    assert run(["predict", path("pinch_plus"), path("comalada_28a")])[1] == 2
    report, code, _ = run(["predict", path("comalada_65a"), path("comalada_65b"), "--format", "json"])
    assert code == 0 and all(r["rank"] == 16 for r in report["results"])


def test_lattice():
    report, code, _ = run(["lattice", "--graph", "E8", "--fundamental-cycle", "--format", "json"])
    assert code == 0
    assert report["results"][0]["fundamental_cycle"] == {"Z": [2, 3, 4, 6, 5, 4, 3, 2], "Z2": -2}
    report, code, _ = run(["lattice", "--trace", "two-d8", "--format", "json"])
    states = report["results"][0]["trace"]["states"]
    assert [s["singularities"] for s in states][-1] == {}
    assert run(["lattice"])[1] == 2
    assert run(["lattice", "--graph", "Q5"])[1] == 2
    assert run(["lattice", "--trace", "bogus"])[1] == 2


@pytest.mark.parametrize("content,needle", [
    ("{not json", "malformed JSON"),
    (json.dumps({"field": {"kind": "quadratic", "m": 12}, "curve": {}}), "bad field"),
    (json.dumps({"field": {"kind": "quadratic", "m": -3}, "curve": {"a7": [0, 0]}}), "keys"),
    (json.dumps({"field": {"kind": "rational"}, "curve": {"a4": "1/2", "a6": 1}}), ""),
    (json.dumps({"field": {"kind": "rational"}, "curve": {"a1": 0}}), "disc"),
    (json.dumps([1, 2]), "top-level"),
])
def test_input_errors(tmp_path, content, needle, capsys):
    code = main(["invariants", write(tmp_path, content)])
    assert code == 2
    err = capsys.readouterr().err
    assert "error" in err and needle in err


def test_non_integral_fraction(tmp_path):
    doc = {"field": {"kind": "quadratic", "m": 5}, "curve": {"a1": [1, 0], "a6": [1, 0]}}
    assert run(["invariants", write(tmp_path, doc)])[1] == 0  # theta = (1 + sqrt 5)/2 coordinates are integral
    doc = {"field": {"kind": "quadratic", "m": 5}, "curve": {"a1": [0.5, 0], "a6": [1, 0]}}
    assert run(["invariants", write(tmp_path, doc)])[1] == 2


def test_missing_file():
    assert run(["invariants", "/nonexistent/curve.json"])[1] == 2


def test_mutated_coefficient_fails(tmp_path):
    # perturbing a4 of the pinch curve breaks admissibility (and good reduction outside 2)
    doc = json.loads(json.dumps(PINCH_DOC))
    doc["curve"]["a4"] = [1, 1]
    report, code, _ = run(["admissible", write(tmp_path, doc), "--format", "json"])
    assert code == 1 and report["pass"] is False


def test_verify_filter_and_determinism():
    report, code, text = run(["verify-paper", "--filter", "pinch", "--format", "json"])
    assert code == 0
    assert report["results"] and all("pinch" in r["group"] for r in report["results"])
    a = run(["verify-paper", "--format", "json", "--jobs", "1"])[2]
    b = run(["verify-paper", "--format", "json", "--jobs", "3"])[2]
    assert a == b


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "kummerlab", "lattice", "--graph", "D4", "--format", "json"],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["results"][0]["negative_definite"] is True
