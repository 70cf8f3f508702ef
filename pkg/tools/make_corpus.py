"""Regenerate src/kummerlab/corpus/*.json from the reference expressions."""

import json
from pathlib import Path

from kummerlab.curves import expressions_model
from kummerlab.numring.elements import NumberRing

OUT = Path(__file__).resolve().parents[1] / "src" / "kummerlab" / "corpus"
TABLE = "table of elliptic curves with good reduction everywhere over Q(sqrt 7), Q(sqrt 41), Q(sqrt 65)"

COMALADA = [
    ("comalada_28a", 7, "8+3*s", "-(1+2*e**2)", "16*e**3", "255**3"),
    ("comalada_28b", 7, "8+3*s", "-(1+2*e**-2)", "16*e**-3", None),
    ("comalada_41a", 41, "32+5*s", "(3*e-1)/2", "(e**2-e)/2", "(e-16)**3/e"),
    ("comalada_41b", 41, "32+5*s", "(-3*e**-1-1)/2", "(e**-2+e**-1)/2", None),
    ("comalada_65a", 65, "8+s", "2*e**2-1", "16*e**3", "257**3"),
    ("comalada_65b", 65, "8+s", "10*e**2-5", "400*e**3", None),
    ("comalada_65c", 65, "8+s", "8*e+1", "16*e**2", "17**3"),
    ("comalada_65d", 65, "8+s", "40*e+5", "400*e**2", None),
]


def write(doc):
    path = OUT / f"{doc['id']}.json"
    path.write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n")


def main():
    OUT.mkdir(exist_ok=True)
    for ident, m, unit, a2, a4, j in COMALADA:
        ring = NumberRing.quadratic(m)
        model = expressions_model(ring, unit, {"a2": a2, "a4": a4})
        expected = {"good_reduction_everywhere": True, "e2_constant": True, "ordinary": True,
                    "admissible": True, "pair_admissible": True}
        if j:
            expected["j"] = j
        write({"id": ident, "tags": ["comalada"], "field": ring.to_json(), "curve": model.to_json(),
               "source": {"unit": unit, "a2": a2, "a4": a4},
               "citation": f"{TABLE}; fundamental unit {unit.replace('s', f'sqrt({m})')}",
               "expected": expected})
    pinch = {"disc": 16, "c4": 0, "j": "0", "kodaira": "II", "components": 1, "val_disc": 4,
             "fiber_type": "Mu2", "d": 1, "admissible": True}
    for sign, tag in ((1, "plus"), (-1, "minus")):
        write({"id": f"pinch_{tag}", "tags": ["pinch"], "field": {"kind": "quadratic", "m": -3},
               "curve": {"a1": [0, 0], "a2": [sign, sign], "a3": [0, 0], "a4": [0, 1], "a6": [0, 0]},
               "citation": "y^2 = x^3 +/- (1 + w) x^2 + w x over Z[w], good reduction outside 2",
               "expected": pinch})
    # the exceptional equations over Z[i] and Z[sqrt -2]
    write({"id": "reject_gaussian", "tags": ["reject"], "field": {"kind": "quadratic", "m": -1},
           "curve": {"a1": [1, 1], "a2": [0, 1], "a3": [0, 0], "a4": [2, 0], "a6": [0, 3]},
           "citation": "y^2 + (1+i) xy = x^3 + i x^2 + 2x + 3i",
           "expected": {"key_identity": [0, 24], "val_key": 6, "d": 1, "admissible": False}})
    write({"id": "reject_sqrt2a", "tags": ["reject"], "field": {"kind": "quadratic", "m": -2},
           "curve": {"a1": [0, 1], "a2": [-1, 0], "a3": [0, 0], "a4": [-2, 0], "a6": [3, 0]},
           "citation": "y^2 + pi xy = x^3 - x^2 - 2x + 3, pi = sqrt(-2)",
           "expected": {"key_identity": [24, 0], "val_key": 6, "d": 1, "admissible": False}})
    write({"id": "reject_sqrt2b", "tags": ["reject"], "field": {"kind": "quadratic", "m": -2},
           "curve": {"a1": [0, 1], "a2": [-1, 0], "a3": [0, 1], "a4": [-1, 0], "a6": [0, 0]},
           "citation": "y^2 + pi xy + pi y = x^3 - x^2 - x, pi = sqrt(-2)",
           "expected": {"key_identity": [4, 0], "val_key": 4, "d": 1, "admissible": False}})


if __name__ == "__main__":
    main()
