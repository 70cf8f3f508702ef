"""Curve files and the shipped corpus.

A curve file is JSON::

    {"field": {"kind": "quadratic", "m": -3},
     "curve": {"a1": [0, 0], "a2": [1, 1], "a3": [0, 0], "a4": [0, 1], "a6": [0, 0]}}

where [x, y] means x + y*theta (theta = (1 + sqrt m)/2 if m = 1 mod 4, else sqrt m).
Rational rings use bare integers, the tower uses triples of pairs.  Corpus files
carry extra keys (``id``, ``expected``, ``citation``, ``source``).
"""

from __future__ import annotations

import ast
import json
import operator
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .numring.elements import NumberRing, RingElement
from .weierstrass import NAMES, SingularModelError, WeierstrassModel


class CurveFileError(ValueError):
    pass


@dataclass(frozen=True)
class CurveRecord:
    identifier: str
    ring: NumberRing
    model: WeierstrassModel
    expected: dict = field(default_factory=dict)
    citation: str = ""
    source: dict = field(default_factory=dict)
    tags: tuple = ()

    def to_json(self) -> dict:
        return {"id": self.identifier, "field": self.ring.to_json(), "curve": self.model.to_json()}


def parse_curve_document(doc, identifier: str = "curve") -> CurveRecord:
    if not isinstance(doc, dict) or "field" not in doc or "curve" not in doc:
        raise CurveFileError("curve file needs top-level 'field' and 'curve' objects")
    try:
        ring = NumberRing.from_json(doc["field"])
    except (ValueError, TypeError) as exc:
        raise CurveFileError(f"bad field: {exc}") from exc
    curve = doc["curve"]
    if not isinstance(curve, dict) or set(curve) - set(NAMES):
        raise CurveFileError(f"'curve' must be an object with keys among {', '.join(NAMES)}")
    zero = 0 if ring.kind == "rational" else ([[0, 0]] * 3 if ring.kind == "tower" else [0, 0])
    try:
        coeffs = [ring.element_from_json(curve.get(n, zero)) for n in NAMES]
    except (ValueError, TypeError) as exc:
        raise CurveFileError(f"bad coefficient: {exc}") from exc
    try:
        model = WeierstrassModel(ring, *coeffs)
    except SingularModelError as exc:
        raise CurveFileError(str(exc)) from exc
    if not model.is_integral():
        raise CurveFileError("coefficients must be integral (integer theta-coordinates)")
    return CurveRecord(doc.get("id", identifier), ring, model, doc.get("expected", {}),
                       doc.get("citation", ""), doc.get("source", {}), tuple(doc.get("tags", ())))


def parse_curve_file(path) -> CurveRecord:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise CurveFileError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CurveFileError(f"malformed JSON in {path}: {exc}") from exc
    return parse_curve_document(doc, path.stem)


# expressions in a unit e and sqrt(m) s -----------------------------------------------

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}


def eval_expression(expr: str, ring: NumberRing, unit: RingElement | None = None) -> RingElement:
    """Evaluate an arithmetic string in ``e`` (the unit) and ``s`` (sqrt m).

    Only integer literals, + - * /, unary minus and integer powers are accepted.
    """
    names = {"s": ring.sqrt_m()}
    if unit is not None:
        names["e"] = unit

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return ring.coerce(node.value)
        if isinstance(node, ast.Name) and node.id in names:
            return names[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Pow):
            k = _int_literal(node.right)
            base = ev(node.left)
            return base**k if k >= 0 else (1 / base) ** (-k)
        raise CurveFileError(f"unsupported expression element in {expr!r}")

    try:
        tree = ast.parse(expr, mode="eval")
    except SyntaxError as exc:
        raise CurveFileError(f"cannot parse {expr!r}") from exc
    return ev(tree)


def _int_literal(node) -> int:
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_int_literal(node.operand)
    raise CurveFileError("exponents must be integer literals")


def expressions_model(ring: NumberRing, unit_expr: str | None, exprs: dict) -> WeierstrassModel:
    unit = eval_expression(unit_expr, ring) if unit_expr else None
    return WeierstrassModel(ring, *[eval_expression(exprs.get(n, "0"), ring, unit) for n in NAMES])


# the shipped corpus ----------------------------------------------------------------------

def corpus_dir():
    return resources.files("kummerlab") / "corpus"


def load_corpus() -> list[CurveRecord]:
    out = []
    for entry in sorted(corpus_dir().iterdir(), key=lambda p: p.name):
        if entry.name.endswith(".json"):
            out.append(parse_curve_document(json.loads(entry.read_text()), entry.name[:-5]))
    return out


def corpus_record(identifier: str) -> CurveRecord:
    for rec in load_corpus():
        if rec.identifier == identifier:
            return rec
    raise KeyError(identifier)


__all__ = [
    "CurveFileError", "CurveRecord", "parse_curve_document", "parse_curve_file", "eval_expression",
    "expressions_model", "load_corpus", "corpus_record", "corpus_dir",
]
