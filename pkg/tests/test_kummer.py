import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kummerlab.curves import corpus_record, load_corpus
from kummerlab.kummer import (InconsistentInputError, PrimeFacts, check_admissible, check_pair_admissible,
                              evaluate_checklist, predict_rdp, relevant_primes, resolution_checklist)
from kummerlab.numring import RATIONAL
from kummerlab.weierstrass import CoordinateChange, IntegralityError, WeierstrassModel, transform

COMALADA = [r for r in load_corpus() if r.identifier.startswith("comalada")]


# predictor ---------------------------------------------------------------------------------

TABLE = [
    # (p, fiber type, selector n, configuration)
    (3, "ConstantZ2", None, {"A1": 16}),
    (2, "Mu2", None, {"A1": 16, "D4": 1}),
    (2, "Alpha2", 4, {"D4": 5}),
    (2, "Alpha2", 2, {"D8": 2, "D4": 1}),
    (2, "ConstantZ2", 4, {"D4": 4}),
    (2, "ConstantZ2", 2, {"D8": 2}),
]


@pytest.mark.parametrize("p,kind,n,expected", TABLE)
def test_predictor_table(p, kind, n, expected):
    cfg = predict_rdp(p, kind, n=n)
    assert cfg.merged() == expected
    assert cfg.rank in (16, 20)
    assert cfg.rank == (20 if kind != "ConstantZ2" and p == 2 else 16)


def test_predictor_critical_marked():
    assert predict_rdp(2, "Alpha2", 2).label == "2D8 + D4"
    assert predict_rdp(2, "Mu2").multiset() == {"A1": 16, "D4crit": 1}


def test_predictor_fix_components_selector():
    assert predict_rdp(2, "ConstantZ2", fix_components=(2, 2)).merged() == {"D4": 4}
    assert predict_rdp(2, "ConstantZ2", fix_components=(1, 2)).merged() == {"D8": 2}
    assert predict_rdp(2, "ConstantZ2", n=4, fix_components=(2, 2)).rank == 16


@pytest.mark.parametrize("kwargs", [
    dict(p=2, fiber_type="ConstantZ2", n=1),
    dict(p=2, fiber_type="ConstantZ2", n=3),
    dict(p=2, fiber_type="ConstantZ2"),
    dict(p=2, fiber_type="ConstantZ2", n=2, fix_components=(2, 2)),
    dict(p=3, fiber_type="Alpha2"),
    dict(p=2, fiber_type="Z/3"),
])
def test_predictor_inconsistent(kwargs):
    with pytest.raises(InconsistentInputError):
        predict_rdp(**kwargs)


@given(st.sampled_from([2, 3, 5, 7]), st.sampled_from(["ConstantZ2", "Mu2", "Alpha2"]), st.sampled_from([2, 4]))
def test_predictor_ranks(p, kind, n):
    try:
        cfg = predict_rdp(p, kind, n=n)
    except InconsistentInputError:
        assert p != 2 and kind == "Alpha2"
        return
    assert cfg.rank in (16, 20)


# admissibility -------------------------------------------------------------------------------

@pytest.mark.parametrize("rec", COMALADA, ids=lambda r: r.identifier)
def test_comalada_admissible(rec):
    rep = check_admissible(rec.model)
    assert rep.verdict, rep.reasons
    assert all(r.reduction == "good" for r in rep.primes)


@pytest.mark.parametrize("name", ["pinch_plus", "pinch_minus"])
def test_pinch_admissible(name):
    rep = check_admissible(corpus_record(name).model)
    assert rep.verdict, rep.reasons
    (rec,) = [r for r in rep.primes if r.prime.p == 2]
    assert (rec.symbol, rec.d, rec.val_key, rec.fiber_type) == ("II", 1, 2, "Mu2")


@pytest.mark.parametrize("name,key,val", [
    ("reject_gaussian", [0, 24], 6), ("reject_sqrt2a", [24, 0], 6), ("reject_sqrt2b", [4, 0], 4)])
def test_rejects(name, key, val):
    rep = check_admissible(corpus_record(name).model)
    assert not rep.verdict
    (rec,) = [r for r in rep.primes if r.prime.p == 2]
    assert rec.key_value.to_json() == key
    assert (rec.val_key, rec.d) == (val, 1)
    assert any(f"val {val} ≠ 2·1" in r for r in rep.reasons)


def test_odd_bad_reduction_rejected():
    rep = check_admissible(WeierstrassModel(RATIONAL, 0, -1, 1, -10, -20))  # 11a1
    assert not rep.verdict
    assert any("odd residue characteristic 11" in r for r in rep.reasons)


def test_relevant_primes_needs_integral_model():
    E = WeierstrassModel(RATIONAL, 0, 0, 0, RATIONAL(1) / 2, 1)
    with pytest.raises(IntegralityError):
        relevant_primes(E)


@pytest.mark.parametrize("rec", COMALADA[:4] + [corpus_record("pinch_plus")], ids=lambda r: r.identifier)
@settings(max_examples=10)
@given(r=st.integers(-3, 3), s=st.integers(-3, 3), t=st.integers(-3, 3))
def test_verdict_invariant_under_coordinate_change(rec, r, s, t):
    F = transform(rec.model, CoordinateChange(1, r, s, t))
    assert check_admissible(F).verdict == check_admissible(rec.model).verdict


def test_same_field_pairs():
    by_field = {}
    for rec in COMALADA:
        by_field.setdefault(rec.ring.m, []).append(rec)
    for recs in by_field.values():
        for a, b in itertools.combinations(recs, 2):
            assert check_pair_admissible(a.model, b.model).verdict


def test_pinch_pair_and_mismatch():
    plus, minus = corpus_record("pinch_plus"), corpus_record("pinch_minus")
    assert check_pair_admissible(plus.model, minus.model).verdict
    with pytest.raises(ValueError):
        check_pair_admissible(plus.model, COMALADA[0].model)
    good = WeierstrassModel(plus.ring, 1, 0, 0, 0, plus.ring.gen())
    rep = check_pair_admissible(plus.model, good)
    assert not rep.verdict


# checklist --------------------------------------------------------------------------------

def test_checklist_pinch_pair():
    out = resolution_checklist(corpus_record("pinch_plus").model, corpus_record("pinch_minus").model)
    assert out.passed
    assert out.recommendation == "tame cubic"
    assert out.flags["isomorphic_over_sh"] is None
    assert any("undetermined" in n for n in out.notes)


def test_checklist_good_pair():
    a, b = corpus_record("comalada_65a"), corpus_record("comalada_65b")
    out = resolution_checklist(a.model, b.model)
    assert out.passed and out.recommendation == "none"
    assert out.flags["two_torsion_constant"] is True


def test_checklist_needs_admissible_pair():
    with pytest.raises(ValueError, match="admissible"):
        resolution_checklist(corpus_record("reject_sqrt2a").model, corpus_record("reject_sqrt2b").model)


def test_checklist_flag_logic():
    bad = PrimeFacts("P", good=False, two_torsion_constant=None, multiplicative=True, kraus_order=6)
    assert evaluate_checklist([bad], True, True).recommendation == "tame cubic"
    quad = PrimeFacts("P", good=False, two_torsion_constant=None, multiplicative=True, kraus_order=2)
    assert evaluate_checklist([quad], True, True).recommendation == "none"
    out = evaluate_checklist([bad], False, True)
    assert not out.passed and any("third root" in f for f in out.failures)
    out = evaluate_checklist([bad], True, False)
    assert not out.passed
    alpha = PrimeFacts("P", good=False, two_torsion_constant=None, multiplicative=False, kraus_order=6)
    assert not evaluate_checklist([alpha], True, True).passed
    good = PrimeFacts("P", good=True, two_torsion_constant=False, multiplicative=False, kraus_order=None)
    out = evaluate_checklist([good], False, None)
    assert not out.passed and out.flags["isomorphic_over_sh"] == "not required"
