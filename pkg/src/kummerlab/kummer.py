"""Admissibility certificates, the RDP predictor and the resolution checklist."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import inf

from . import _util
from .effmodel import (CONSTANT, INFINITESIMAL, MULTIPLICATIVE, effective_model_fiber, fixed_scheme_fiber,
                       tate_oort_isomorphic)
from .localtate import (base_change_tame_cubic, kraus_potential_good_reduction, tate_algorithm,
                        two_torsion_constant)
from .numring.elements import EISENSTEIN, absolute_norm
from .numring.primes import LocalPrime, primes_above
from .weierstrass import IntegralityError, WeierstrassModel, key_identity


def relevant_primes(model: WeierstrassModel) -> list[LocalPrime]:
    """Primes above 2 and above every rational prime dividing the norm of the discriminant."""
    if not model.is_integral():
        raise IntegralityError("admissibility needs an integral Weierstrass model")
    n = absolute_norm(model.disc)
    rational = set(_util.prime_factors(n.numerator)) | {2}
    out = []
    for q in sorted(rational):
        out.extend(primes_above(model.ring, q))
    return out


def _fmt(v):
    return "inf" if v == inf else str(v)


@dataclass
class PrimeRecord:
    prime: LocalPrime
    symbol: str
    reduction: str
    val_delta: int
    d: int | None = None
    key_value: object = None
    val_key: int | float | None = None
    fiber_type: str | None = None
    fixed_components: int | None = None
    flags: dict = field(default_factory=dict)
    effective: object = field(default=None, repr=False)
    minimal_model: WeierstrassModel | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        out = {
            "prime": self.prime.label,
            "residue_characteristic": self.prime.p,
            "symbol": self.symbol,
            "reduction": self.reduction,
            "val_delta": self.val_delta,
            "flags": dict(sorted(self.flags.items())),
        }
        if self.d is not None:
            out.update({
                "d": self.d,
                "key_value": self.key_value.to_json() if self.key_value is not None else None,
                "val_key": _fmt(self.val_key),
                "fiber_type": self.fiber_type,
                "fixed_components": self.fixed_components,
            })
        return out


@dataclass
class AdmissibilityReport:
    verdict: bool
    primes: list
    reasons: list

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "primes": [r.to_json() for r in self.primes], "reasons": list(self.reasons)}


def prime_record(model: WeierstrassModel, P: LocalPrime) -> PrimeRecord:
    res = tate_algorithm(model, P)
    M = res.minimal_model
    rec = PrimeRecord(P, str(res.symbol), res.reduction, res.val_delta, minimal_model=M)
    bad = res.reduction != "good"
    rec.flags["bad_reduction_ok"] = (not bad) or (P.p == 2 and res.reduction == "additive")
    if P.p == 2:
        G = effective_model_fiber(M, P, check_minimal=False)
        fix = fixed_scheme_fiber(M, P, check_minimal=False)
        key = key_identity(M)
        rec.d, rec.key_value, rec.val_key = G.d, key, P.valuation(key)
        rec.fiber_type, rec.fixed_components, rec.effective = G.fiber_type, fix.components, G
        rec.flags["fixed_fiber_disconnected"] = fix.disconnected
    if bad:
        # Fix and Sing are disjoint iff additive, char 2 and val(b2 a4 + b6) = 2d
        rec.flags["fix_sing_disjoint"] = bool(rec.flags["bad_reduction_ok"] and rec.val_key == 2 * rec.d)
    else:
        rec.flags["fix_sing_disjoint"] = True
    return rec


def _single_reasons(rec: PrimeRecord) -> list[str]:
    out = []
    L = rec.prime.label
    if not rec.flags["bad_reduction_ok"]:
        if rec.prime.p != 2:
            out.append(f"{L}: bad reduction ({rec.symbol}) in odd residue characteristic {rec.prime.p}")
        else:
            out.append(f"{L}: bad reduction ({rec.symbol}) is {rec.reduction}, not additive")
    elif not rec.flags["fix_sing_disjoint"]:
        out.append(f"{L}: val {_fmt(rec.val_key)} ≠ 2·{rec.d} "
                   "(val(b2a4+b6) against 2·val(2,a1,a3): fixed points meet the singular locus)")
    return out


def check_admissible(model: WeierstrassModel, ring=None) -> AdmissibilityReport:
    if ring is not None and ring != model.ring:
        raise ValueError("model is not defined over the given ring")
    records = [prime_record(model, P) for P in relevant_primes(model)]
    reasons = []
    for rec in records:
        reasons += _single_reasons(rec)
        if rec.prime.p == 2 and not rec.flags["fixed_fiber_disconnected"]:
            reasons.append(f"{rec.prime.label}: fixed-scheme fiber is geometrically connected")
    return AdmissibilityReport(not reasons, records, reasons)


def _bad_set(records) -> set:
    return {r.prime for r in records if r.reduction != "good"}


def check_pair_admissible(E: WeierstrassModel, E2: WeierstrassModel, ring=None) -> AdmissibilityReport:
    if E.ring != E2.ring or (ring is not None and ring != E.ring):
        raise ValueError("the two curves live over different rings")
    primes = sorted(set(relevant_primes(E)) | set(relevant_primes(E2)),
                    key=lambda P: (P.p, P.which or 0))
    recs1 = [prime_record(E, P) for P in primes]
    recs2 = [prime_record(E2, P) for P in primes]
    reasons = []
    if _bad_set(recs1) != _bad_set(recs2):
        only1 = sorted(P.label for P in _bad_set(recs1) - _bad_set(recs2))
        only2 = sorted(P.label for P in _bad_set(recs2) - _bad_set(recs1))
        reasons.append(f"bad-prime sets differ (first only: {only1}, second only: {only2})")
    for tag, recs in (("E", recs1), ("E'", recs2)):
        reasons += [f"{tag} {r}" for rec in recs for r in _single_reasons(rec)]
    combined = []
    for r1, r2 in zip(recs1, recs2):
        entry = {"prime": r1.prime.label, "first": r1.to_json(), "second": r2.to_json()}
        if r1.prime.p == 2:
            disc = r1.flags["fixed_fiber_disconnected"] or r2.flags["fixed_fiber_disconnected"]
            iso = tate_oort_isomorphic(r1.effective, r2.effective)
            entry["flags"] = {"some_fixed_fiber_disconnected": disc, "effective_models_isomorphic": iso}
            if not disc:
                reasons.append(f"{r1.prime.label}: both fixed-scheme fibers are geometrically connected")
            if not iso:
                reasons.append(f"{r1.prime.label}: effective models differ (d = {r1.d} vs {r2.d})")
        combined.append(_PairRecord(entry))
    return AdmissibilityReport(not reasons, combined, reasons)


class _PairRecord:
    def __init__(self, data):
        self.data = data

    def to_json(self):
        return self.data


# RDP table ----------------------------------------------------------------------

RANKS = {"A1": 1, "D4": 4, "D6": 6, "D8": 8}


@dataclass(frozen=True)
class RdpConfiguration:
    regular: tuple  # ((type, count), ...)
    critical: str | None = None

    @property
    def rank(self) -> int:
        r = sum(RANKS[t] * c for t, c in self.regular)
        return r + (RANKS[self.critical] if self.critical else 0)

    def multiset(self) -> dict:
        out = dict(self.regular)
        if self.critical:
            out[self.critical + "crit"] = 1
        return out

    def merged(self) -> dict:
        out = dict(self.regular)
        if self.critical:
            out[self.critical] = out.get(self.critical, 0) + 1
        return out

    @property
    def label(self) -> str:
        parts = [f"{c}{t}" for t, c in self.regular]
        if self.critical:
            parts.append(self.critical)
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {"configuration": self.multiset(), "label": self.label, "rank": self.rank}


class InconsistentInputError(ValueError):
    pass


def predict_rdp(p: int, fiber_type: str, n: int | None = None, fix_components=None) -> RdpConfiguration:
    """Row of the fiberwise-quotient table.

    For p = 2 the second choice is made by ``n`` (points of A_s[2]) or, equivalently,
    by the product of the two fixed-fiber component counts: 4 -> D4 pattern, 2 -> D8.
    """
    if fiber_type not in (CONSTANT, MULTIPLICATIVE, INFINITESIMAL):
        raise InconsistentInputError(f"unknown fiber type {fiber_type!r}")
    if p != 2:
        if fiber_type == INFINITESIMAL:
            raise InconsistentInputError("alpha_2 only occurs in characteristic 2")
        return RdpConfiguration((("A1", 16),))
    if fiber_type == MULTIPLICATIVE:
        return RdpConfiguration((("A1", 16),), "D4")
    sel = n
    if fix_components is not None:
        c1, c2 = fix_components
        prod = c1 * c2
        if sel is not None and sel != prod:
            raise InconsistentInputError(f"n = {n} disagrees with fixed components {c1}*{c2}")
        sel = prod
    if sel not in (2, 4):
        raise InconsistentInputError(f"selector must be 2 or 4, got {sel} (n = 1 is excluded by disconnectedness)")
    regular = (("D4", 4),) if sel == 4 else (("D8", 2),)
    return RdpConfiguration(regular, "D4" if fiber_type == INFINITESIMAL else None)


# resolution checklist --------------------------------------------------------------

@dataclass(frozen=True)
class PrimeFacts:
    """What the checklist needs to know about the pair at one prime above 2."""

    label: str
    good: bool
    two_torsion_constant: bool | None  # both curves, over the completion
    multiplicative: bool  # effective model fiber is mu_2
    kraus_order: int | None  # order of Gal(L^good/L^sh) for bad primes


@dataclass
class ResolutionChecklist:
    flags: dict
    primes: list
    recommendation: str
    failures: list
    notes: list

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"flags": dict(sorted(self.flags.items())), "primes": self.primes, "passed": self.passed,
                "recommendation": self.recommendation, "failures": self.failures, "notes": self.notes}


def evaluate_checklist(facts: list[PrimeFacts], has_third_root: bool, isomorphic_sh) -> ResolutionChecklist:
    """Pure flag logic; ``facts`` covers the primes above 2."""
    failures, notes, per_prime = [], [], []
    needs_cubic = False
    for f in facts:
        entry = {"prime": f.label, "good": f.good}
        if f.good:
            entry["two_torsion_constant"] = f.two_torsion_constant
            if not f.two_torsion_constant:
                failures.append(f"{f.label}: E[2] is not constant over the completion")
        else:
            quad = f.kraus_order in (1, 2)
            entry.update({"multiplicative": f.multiplicative, "kraus_order": f.kraus_order,
                          "quadratic_good_reduction": quad})
            if not has_third_root:
                failures.append(f"{f.label}: bad reduction but F has no primitive third root of unity")
            if not f.multiplicative:
                failures.append(f"{f.label}: bad reduction but the effective model is not multiplicative")
            if f.kraus_order is not None and f.kraus_order % 3 == 0 and f.kraus_order // 3 in (1, 2):
                needs_cubic = True
            elif not quad:
                failures.append(f"{f.label}: good reduction over a quadratic extension not established")
        per_prime.append(entry)
    any_bad = any(not f.good for f in facts)
    if not any_bad:
        isomorphic_sh = "not required"
    elif isomorphic_sh is False:
        failures.append("the curves are not isomorphic over the strict henselization")
    elif isomorphic_sh is None:
        notes.append("isomorphism over the strict henselization undetermined by the implemented test")
    if failures:
        rec = "unresolved"
    elif needs_cubic:
        rec = "tame cubic"
    else:
        rec = "none"
    flags = {
        "third_root_of_unity": has_third_root,
        "critical_residue_field_equal": True,
        "isomorphic_over_sh": isomorphic_sh,
        "two_torsion_constant": all(f.two_torsion_constant for f in facts if f.good),
    }
    notes.append("critical residue field equals k: finite residue fields are perfect")
    return ResolutionChecklist(flags, per_prime, rec, failures, notes)


def _isomorphic_over_sh(M1: WeierstrassModel, M2: WeierstrassModel):
    if M1.coefficients == M2.coefficients:
        return True
    j1, j2 = M1.invariants.j, M2.invariants.j
    if j1[0] * j2[1] != j2[0] * j1[1]:
        return False
    return None


def resolution_checklist(E: WeierstrassModel, E2: WeierstrassModel, ring=None) -> ResolutionChecklist:
    report = check_pair_admissible(E, E2, ring)
    if not report.verdict:
        raise ValueError("resolution checklist needs an admissible pair: " + "; ".join(report.reasons))
    ring = E.ring
    has_omega = ring.kind == "tower" or (ring.kind == "quadratic" and ring.m == -3)
    facts, extra, iso_values = [], [], []
    for P in primes_above(ring, 2):
        r1, r2 = tate_algorithm(E, P), tate_algorithm(E2, P)
        good = r1.reduction == "good" and r2.reduction == "good"
        if not good:
            iso_values.append(_isomorphic_over_sh(r1.minimal_model, r2.minimal_model))
        tt = None
        kraus = None
        mult = effective_model_fiber(r1.minimal_model, P, check_minimal=False).fiber_type == MULTIPLICATIVE
        if good:
            tt = two_torsion_constant(r1.minimal_model, P) and two_torsion_constant(r2.minimal_model, P)
        elif P.e == 1:
            k1 = kraus_potential_good_reduction(r1.minimal_model, P).order
            k2 = kraus_potential_good_reduction(r2.minimal_model, P).order
            kraus = k1 if k1 == k2 else None
        facts.append(PrimeFacts(P.label, good, tt, mult, kraus))
        if kraus == 6 and ring == EISENSTEIN:
            lifted = base_change_tame_cubic(r1.minimal_model)
            up = tate_algorithm(lifted, primes_above(lifted.ring, 2)[0])
            extra.append(f"after tame cubic base change: {up.symbol}, m = {up.m}, val(disc) = {up.val_delta}; "
                         f"good reduction over a further quadratic extension (6 = 3 x 2)")
    if False in iso_values:
        iso = False
    elif all(v is True for v in iso_values):
        iso = True
    else:
        iso = None
    out = evaluate_checklist(facts, has_omega, iso)
    out.notes.extend(extra)
    return out

