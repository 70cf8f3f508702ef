"""The regression suite behind ``kummerlab verify-paper``.

Every check compares a computed value against a reference value (or a fact derived
from reference values).  Checks are grouped; a group runs independently of the others.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations

from . import dualgraph, monodromy
from .curves import CurveRecord, eval_expression, load_corpus
from .effmodel import effective_model_fiber
from .kummer import check_admissible, check_pair_admissible, predict_rdp, relevant_primes
from .localtate import (base_change_tame_cubic, is_minimal, kraus_potential_good_reduction, tate_algorithm,
                        two_torsion_rank)
from .numring.discriminants import is_fundamental_discriminant, pure_cubic_discriminant, s3_theorem_applies
from .numring.elements import sqrt
from .numring.primes import primes_above
from .weierstrass import key_identity

DELTA_NOTE = ("wild part: over the strict henselization 4 = 2 + delta + (1 - 1) gives delta = 2; "
              "the value 6 belongs upstairs, where 12 = 2 + 6 + (5 - 1) after the tame cubic base change "
              "(delta scales by the ramification index 3)")
B_SUBSCRIPT_NOTE = ("the Z[sqrt -2] values 24 and 4 are b2*a4 + b6; the variant b4*a2 + b6 would give "
                    "16 and 4")
TWELVE_NOTE = ("12 is the discriminant of Q(sqrt 3) and so is fundamental; the non-fundamental value "
               "checked is -12")
REJECT_SCOPE_NOTE = ("only the listed exceptional equations are checked; the remaining cases of the "
                     "Ogg and Pinch tables are not reproduced")


@dataclass(frozen=True)
class Expectation:
    group: str
    name: str
    ok: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"group": self.group, "name": self.name, "pass": self.ok, "detail": self.detail}


def _exp(group, name, ok, detail=""):
    return Expectation(group, name, bool(ok), str(detail))


# corpus groups -----------------------------------------------------------------------

def _unit_of(rec: CurveRecord):
    unit = rec.source.get("unit")
    return eval_expression(unit, rec.ring) if unit else None


def check_comalada(rec: CurveRecord) -> list[Expectation]:
    E, g, ex = rec.model, rec.identifier, rec.expected
    out = []
    symbols = []
    ordinary = True
    for P in relevant_primes(E):
        res = tate_algorithm(E, P)
        symbols.append(f"{P.label}:{res.symbol}")
        if P.p == 2:
            j = res.minimal_model.invariants.j_value()
            ordinary = ordinary and P.valuation(j) == 0
    good = all(s.endswith(":I0") for s in symbols)
    if "good_reduction_everywhere" in ex:
        out.append(_exp(g, "good reduction at every relevant prime",
                        good == ex["good_reduction_everywhere"], ", ".join(symbols)))
    if "e2_constant" in ex:
        d = E.a2 * E.a2 - 4 * E.a4
        out.append(_exp(g, "a2^2 - 4 a4 is a square", (sqrt(d) is not None) == ex["e2_constant"], d))
    if "ordinary" in ex:
        out.append(_exp(g, "j is a unit at the primes above 2", ordinary == ex["ordinary"]))
    if "j" in ex:
        want = eval_expression(ex["j"], rec.ring, _unit_of(rec))
        got = E.invariants.j_value()
        out.append(_exp(g, f"j = {ex['j']}", got == want, got))
    if "admissible" in ex:
        rep = check_admissible(E)
        out.append(_exp(g, "admissible", rep.verdict == ex["admissible"], "; ".join(rep.reasons)))
    return out


def check_pinch(rec: CurveRecord) -> list[Expectation]:
    E, g, ex = rec.model, rec.identifier, rec.expected
    inv = E.invariants
    (P,) = primes_above(E.ring, 2)
    res = tate_algorithm(E, P)
    G = effective_model_fiber(res.minimal_model, P, check_minimal=False)
    rep = check_admissible(E)
    return [
        _exp(g, "disc = 16", inv.disc == ex["disc"], inv.disc),
        _exp(g, "c4 = 0", inv.c4 == ex["c4"], inv.c4),
        _exp(g, "j = 0", inv.j_value() == 0, inv.j_value()),
        _exp(g, f"Kodaira {ex['kodaira']} with m = {ex['components']} at {P.label}",
             str(res.symbol) == ex["kodaira"] and res.m == ex["components"], f"{res.symbol}, m = {res.m}"),
        _exp(g, f"val(disc) = {ex['val_disc']}, minimal", res.val_delta == ex["val_disc"] and is_minimal(E, P),
             res.val_delta),
        _exp(g, f"effective model {ex['fiber_type']} with d = {ex['d']}",
             G.fiber_type == ex["fiber_type"] and G.d == ex["d"], f"{G.fiber_type}, d = {G.d}"),
        _exp(g, "E[2] splits over the completion", two_torsion_rank(E, P) == 3),
        _exp(g, "admissible", rep.verdict == ex["admissible"], "; ".join(rep.reasons)),
    ]


def check_reject(rec: CurveRecord) -> list[Expectation]:
    E, g, ex = rec.model, rec.identifier, rec.expected
    (P,) = primes_above(E.ring, 2)
    key = key_identity(E)
    want = rec.ring.element_from_json(ex["key_identity"])
    G = effective_model_fiber(E, P, check_minimal=False)
    rep = check_admissible(E)
    return [
        _exp(g, f"b2*a4 + b6 = {want}", key == want, key),
        _exp(g, f"val(b2*a4 + b6) = {ex['val_key']}", P.valuation(key) == ex["val_key"], P.valuation(key)),
        _exp(g, f"val(2, a1, a3) = {ex['d']}", G.d == ex["d"], G.d),
        _exp(g, "not admissible", rep.verdict == ex["admissible"], "; ".join(rep.reasons)),
    ]


def _corpus_checks(rec):
    if "comalada" in rec.tags:
        return check_comalada(rec)
    if "pinch" in rec.tags:
        return check_pinch(rec)
    if "reject" in rec.tags:
        return check_reject(rec)
    return []


def check_pairs(records) -> list[Expectation]:
    out = []
    by_field = {}
    for rec in records:
        if rec.expected.get("pair_admissible"):
            by_field.setdefault(rec.ring, []).append(rec)
    for recs in by_field.values():
        for r1, r2 in combinations(recs, 2):
            rep = check_pair_admissible(r1.model, r2.model)
            out.append(_exp(f"pair {r1.identifier}+{r2.identifier}", "pair admissible", rep.verdict,
                            "; ".join(rep.reasons)))
    pinch = [r for r in records if "pinch" in r.tags]
    if len(pinch) == 2:
        rep = check_pair_admissible(pinch[0].model, pinch[1].model)
        out.append(_exp("pair pinch_minus+pinch_plus", "pair admissible", rep.verdict, "; ".join(rep.reasons)))
    return out


# structural groups ---------------------------------------------------------------------

def check_tower(records) -> list[Expectation]:
    out = []
    for rec in records:
        if "pinch" not in rec.tags:
            continue
        up = base_change_tame_cubic(rec.model)
        (P,) = primes_above(up.ring, 2)
        res = tate_algorithm(up, P)
        g = f"tower {rec.identifier}"
        out += [
            _exp(g, "val(disc) = 12", res.val_delta == 12, res.val_delta),
            _exp(g, "Kodaira I0* with m = 5", str(res.symbol) == "I0*" and res.m == 5, f"{res.symbol}, m = {res.m}"),
            _exp(g, "model stays minimal", is_minimal(up, P)),
            _exp(g, "Ogg: 12 = 2 + 6 + (5 - 1)", (res.val_delta, res.delta_wild, res.m - 1) == (12, 6, 4),
                 f"{res.val_delta} = 2 + {res.delta_wild} + {res.m - 1}"),
        ]
    return out


def check_kraus(records) -> list[Expectation]:
    out = []
    for rec in records:
        if "pinch" in rec.tags:
            k = kraus_potential_good_reduction(rec.model)
            out.append(_exp(f"kraus {rec.identifier}", "order 6, C2 x C3", (k.order, k.structure) == (6, "C2xC3"),
                            k.reason))
    return out


def check_discriminants() -> list[Expectation]:
    g = "discriminants"
    out = [_exp(g, f"{d} is fundamental", is_fundamental_discriminant(d)) for d in (28, 41, 65)]
    out.append(_exp(g, "-12 is not fundamental", not is_fundamental_discriminant(-12)))
    dk, f = pure_cubic_discriminant(2)
    out.append(_exp("pure cubic", "m = 2: d_K = -108, f = 6", (dk, f) == (-108, 6), f"d_K = {dk}, f = {f}"))
    out.append(_exp("pure cubic", "m = 2: f even, so the S3 construction applies", s3_theorem_applies(2)))
    return out


def check_predictor() -> list[Expectation]:
    g = "rdp table"
    rows = [
        ((3, "ConstantZ2"), "16A1"),
        ((2, "Mu2"), "16A1 + D4"),
        ((2, "Alpha2", 4), "4D4 + D4"),
        ((2, "Alpha2", 2), "2D8 + D4"),
        ((2, "ConstantZ2", 4), "4D4"),
        ((2, "ConstantZ2", 2), "2D8"),
    ]
    out = []
    for args, want in rows:
        cfg = predict_rdp(*args)
        out.append(_exp(g, f"{args} -> {want}", cfg.label == want and cfg.rank in (16, 20),
                        f"{cfg.label}, rank {cfg.rank}"))
    return out


def check_lattice() -> list[Expectation]:
    g = "lattice"
    out = []
    ade = [("A", n) for n in range(1, 9)] + [("D", n) for n in range(4, 9)] + [("E", n) for n in (6, 7, 8)]
    bad = []
    for kind, n in ade:
        G = dualgraph.dynkin(kind, n)
        if not dualgraph.is_negative_definite(G) or dualgraph.fundamental_cycle(G).self_intersection != -2:
            bad.append(f"{kind}{n}")
    out.append(_exp(g, "ADE graphs negative definite with Z^2 = -2", not bad, ", ".join(bad)))
    z = dualgraph.fundamental_cycle(dualgraph.dynkin("E", 8)).coefficients
    out.append(_exp(g, "E8 fundamental cycle (2,3,4,6,5,4,3,2)", z == (2, 3, 4, 6, 5, 4, 3, 2), z))
    out.append(_exp(g, "affine D4 not negative definite", not dualgraph.is_negative_definite(dualgraph.affine("D", 4))))
    tr = dualgraph.partial_resolution_trace("TwoD8plusD4chain")
    want = [{"D6": 2, "A1": 2}, {"D4": 2, "A1": 2}, {"A1": 6}, {}]
    out.append(_exp(g, "two-D8 trace {D6:2,A1:2} -> {D4:2,A1:2} -> {A1:6} -> {}",
                    tr.multisets() == want and [s.components for s in tr.states][:3] == [3, 7, 11],
                    tr.multisets()))
    tr = dualgraph.partial_resolution_trace("FourD4plusD4")
    out.append(_exp(g, "I0*-pair trace: sixteen blow-ups ending resolved",
                    tr.singleton_steps == 16 and tr.resolved
                    and sum(s.resolved_rank for s in tr.states) == tr.initial_rank,
                    f"{tr.singleton_steps} steps"))
    return out


def check_monodromy() -> list[Expectation]:
    g = "monodromy"
    M = monodromy.ExactMatrix
    f, h = M.of([[1, 1], [0, 2]]), M.of([[3, 0], [1, 5]])
    law = monodromy.charpoly(monodromy.kronecker(f, h)) == monodromy.poly_from_roots([3, 5, 6, 10])
    out = [_exp(g, "charpoly of a Kronecker product is prod (T - l_i m_j)", law)]
    for p in (3, 5):
        scan = monodromy.exhaustive_lemma_scan(p)
        out.append(_exp(g, f"exhaustive 2x2 scan over F_{p}: no violations", scan.holds and scan.pairs == p**8,
                        scan.to_json()))
    swap = monodromy.d4_monodromy_charpoly(monodromy.SWAPS_LEGS, 5)
    out.append(_exp(g, "swap charpoly (T - a)^3 (T + a)",
                    swap == monodromy.poly_mul(monodromy.poly_from_roots([5, 5, 5]), [5, 1]),
                    monodromy.format_poly(swap)))
    chain = monodromy.swap_case_chain(3, 5)
    out.append(_exp(g, "multiplicity 3 > 2 forces homotheties and excludes the swap",
                    chain["triggered"] and chain["swap_excluded"] and chain["multiplicity"] == 3))
    return out


# assembly ------------------------------------------------------------------------------

def _matches(exp: Expectation, filt: str | None) -> bool:
    return not filt or filt.lower() in exp.group.lower() or filt.lower() in exp.name.lower()


def run_suite(filt: str | None = None, jobs: int = 1, records=None) -> tuple[list[Expectation], list[str]]:
    records = load_corpus() if records is None else records
    tasks = [lambda r=r: _corpus_checks(r) for r in records]
    tasks += [lambda: check_pairs(records), lambda: check_tower(records), lambda: check_kraus(records),
              check_discriminants, check_predictor, check_lattice, check_monodromy]
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            chunks = list(pool.map(lambda t: t(), tasks))
    else:
        chunks = [t() for t in tasks]
    results = [e for chunk in chunks for e in chunk if _matches(e, filt)]
    notes = [DELTA_NOTE, B_SUBSCRIPT_NOTE, TWELVE_NOTE, REJECT_SCOPE_NOTE]
    return results, notes


__all__ = ["Expectation", "run_suite", "check_comalada", "check_pinch", "check_reject", "DELTA_NOTE",
           "B_SUBSCRIPT_NOTE", "TWELVE_NOTE"]
