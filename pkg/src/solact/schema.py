"""JSON serialization of actions, matrices, and report values.

Rationals serialize as strings "p/q" (plain "n" for integers); matrices as
row-major arrays of rational strings; polynomials as coefficient arrays in
ascending degree.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional

from .action import SolenoidAction
from .linalg import QMatrix, QSubspace
from .poly import RatPoly


class SchemaError(ValueError):
    """Malformed input document."""


def rat_to_str(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rat_from_str(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        try:
            return Fraction(s.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad rational {s!r}: {exc}") from None
    raise SchemaError(f"bad rational {s!r}")


def matrix_to_json(m: QMatrix) -> list[list[str]]:
    return [[rat_to_str(e) for e in row] for row in m.entries]


def matrix_from_json(rows, where: str = "matrix") -> QMatrix:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise SchemaError(f"{where}: expected a non-empty array of rows")
    try:
        return QMatrix([[rat_from_str(e) for e in row] for row in rows])
    except ValueError as exc:
        raise SchemaError(f"{where}: {exc}") from None


def poly_to_json(f: RatPoly) -> list[str]:
    return [rat_to_str(c) for c in f.coeffs]


def poly_from_json(coeffs) -> RatPoly:
    return RatPoly([rat_from_str(c) for c in coeffs])


def subspace_to_json(s: QSubspace) -> dict:
    return {"ambient": s.ambient, "basis": [[rat_to_str(e) for e in b] for b in s.basis]}


def action_to_json(a: SolenoidAction) -> dict:
    doc = {
        "d": a.d,
        "m": a.m,
        "generators": [matrix_to_json(g) for g in a.generators],
    }
    if a.label is not None:
        doc["label"] = a.label
    return doc


def action_from_json(doc) -> SolenoidAction:
    if not isinstance(doc, dict):
        raise SchemaError("action document must be an object")
    for key in ("d", "m", "generators"):
        if key not in doc:
            raise SchemaError(f"action document missing key {key!r}")
    gens = doc["generators"]
    if not isinstance(gens, list) or len(gens) != doc["d"]:
        raise SchemaError("generators must be an array of length d")
    mats = []
    for i, g in enumerate(gens):
        m = matrix_from_json(g, where=f"generators[{i}]")
        if m.rows != doc["m"] or m.cols != doc["m"]:
            raise SchemaError(f"generators[{i}]: expected {doc['m']}x{doc['m']}")
        mats.append(m)
    label = doc.get("label")
    if label is not None and not isinstance(label, str):
        raise SchemaError("label must be a string")
    return SolenoidAction(tuple(mats), label=label)


def load_action(path: str) -> SolenoidAction:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise SchemaError(f"{path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    try:
        return action_from_json(doc)
    except SchemaError as exc:
        raise SchemaError(f"{path}: {exc}") from None


def dump_canonical(doc: dict) -> str:
    """Deterministic JSON: sorted keys, no whitespace variation."""
    return json.dumps(doc, sort_keys=True, separators=(",", ": "), indent=1)
