"""JSON representations of the domain types, exact and deterministic.

Rationals travel as strings "p/q" so no precision is lost; scalars as
objects with the four coordinates on the basis 1, i, sqrt2, i*sqrt2;
matrices as row-major grids; filtrations as one spanning set per step.
Serialization is canonical (sorted keys, fixed separators), so equal
documents produce identical bytes.

Parsing is lenient about scalar spellings on the way in (a bare integer
or a "p/q" string means a rational scalar) and canonical on the way
out; parse(serialize(x)) always returns x.

Input shape problems raise SchemaError carrying a pointer to the
offending field; the CLI maps those to exit status 2, keeping them
apart from domain errors (exit 1).
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional, Union

from .domain import Filtration, HodgeFrame
from .linalg import Matrix, Subspace, Vector
from .roots import RestrictedRoots
from .scalars import Scalar

JsonNode = Union[None, bool, int, str, list, dict]

SCALAR_KEYS = ("re", "im", "re_sqrt2", "im_sqrt2")


class SchemaError(Exception):
    """An input document that does not fit its schema; field points at
    the offending entry, dotted from the document root."""

    def __init__(self, field: str, message: str) -> None:
        super().__init__(message)
        self.field = field
        self.message = message


def _expect_dict(node: JsonNode, field: str) -> dict:
    if not isinstance(node, dict):
        raise SchemaError(field, "expected an object")
    return node


def _expect_list(node: JsonNode, field: str) -> list:
    if not isinstance(node, list):
        raise SchemaError(field, "expected an array")
    return node


def _get(node: dict, key: str, field: str) -> JsonNode:
    if key not in node:
        raise SchemaError(f"{field}.{key}" if field else key, "missing field")
    return node[key]


# -- rationals and scalars ---------------------------------------------------------


def fraction_to_json(x: Fraction) -> str:
    return str(Fraction(x))


def fraction_from_json(node: JsonNode, field: str) -> Fraction:
    if isinstance(node, bool):
        raise SchemaError(field, "expected a rational number")
    if isinstance(node, int):
        return Fraction(node)
    if isinstance(node, str):
        try:
            return Fraction(node.strip())
        except (ValueError, ZeroDivisionError):
            raise SchemaError(field, f"not a rational number: {node!r}") from None
    raise SchemaError(field, "expected a rational number")


def scalar_to_json(s: Scalar) -> dict:
    return {
        "re": fraction_to_json(s.a),
        "im": fraction_to_json(s.b),
        "re_sqrt2": fraction_to_json(s.c),
        "im_sqrt2": fraction_to_json(s.d),
    }


def scalar_from_json(node: JsonNode, field: str) -> Scalar:
    if isinstance(node, (int, str)) and not isinstance(node, bool):
        return Scalar(fraction_from_json(node, field))
    data = _expect_dict(node, field)
    unknown = set(data) - set(SCALAR_KEYS)
    if unknown:
        raise SchemaError(f"{field}.{sorted(unknown)[0]}", "unknown scalar component")
    parts = [
        fraction_from_json(data.get(key, 0), f"{field}.{key}") for key in SCALAR_KEYS
    ]
    return Scalar(*parts)


# -- vectors, matrices, filtrations ------------------------------------------------


def vector_to_json(v: Vector) -> list:
    return [scalar_to_json(s) for s in v]


def vector_from_json(node: JsonNode, field: str) -> Vector:
    return tuple(
        scalar_from_json(entry, f"{field}[{k}]")
        for k, entry in enumerate(_expect_list(node, field))
    )


def matrix_to_json(m: Matrix) -> list:
    return [vector_to_json(row) for row in m.rows]


def matrix_from_json(node: JsonNode, field: str) -> Matrix:
    rows = [
        vector_from_json(row, f"{field}[{k}]")
        for k, row in enumerate(_expect_list(node, field))
    ]
    if not rows:
        raise SchemaError(field, "matrix needs at least one row")
    if len({len(r) for r in rows}) != 1:
        raise SchemaError(field, "matrix rows have unequal lengths")
    return Matrix(rows)


def filtration_to_json(f: Filtration) -> list:
    return [{"basis": [vector_to_json(v) for v in piece.basis]} for piece in f.pieces]


def filtration_from_json(node: JsonNode, field: str) -> Filtration:
    steps = _expect_list(node, field)
    if not steps:
        raise SchemaError(field, "filtration needs at least one step")
    spans = []
    for p, step in enumerate(steps):
        data = _expect_dict(step, f"{field}[{p}]")
        basis = _expect_list(_get(data, "basis", f"{field}[{p}]"), f"{field}[{p}].basis")
        spans.append(
            [vector_from_json(v, f"{field}[{p}].basis[{k}]") for k, v in enumerate(basis)]
        )
    widths = {len(v) for span in spans for v in span}
    if not widths:
        raise SchemaError(field, "filtration has no spanning vectors")
    if len(widths) != 1:
        raise SchemaError(field, "spanning vectors have unequal lengths")
    ambient = widths.pop()
    return Filtration(
        len(steps) - 1, [Subspace(span, ambient) for span in spans]
    )


# -- frames and nilpotents ---------------------------------------------------------


def frame_to_json(frame: HodgeFrame) -> dict:
    return {"m": frame.weight, "h": list(frame.hodge_numbers)}


def frame_from_json(node: JsonNode, field: str) -> HodgeFrame:
    data = _expect_dict(node, field)
    m = _get(data, "m", field)
    if not isinstance(m, int) or isinstance(m, bool):
        raise SchemaError(f"{field}.m" if field else "m", "expected an integer weight")
    h_node = _expect_list(_get(data, "h", field), f"{field}.h" if field else "h")
    h = []
    for k, entry in enumerate(h_node):
        if not isinstance(entry, int) or isinstance(entry, bool):
            raise SchemaError(f"{field}.h[{k}]" if field else f"h[{k}]", "expected an integer")
        h.append(entry)
    try:
        return HodgeFrame(m, tuple(h))
    except ValueError as exc:
        raise SchemaError(f"{field}.h" if field else "h", str(exc)) from None


def root_id(coords: tuple[int, ...]) -> str:
    return "a:(" + ",".join(str(c) for c in coords) + ")"


def root_id_from_json(node: JsonNode, field: str) -> tuple[int, ...]:
    if not isinstance(node, str) or not node.startswith("a:(") or not node.endswith(")"):
        raise SchemaError(field, "expected a root identifier like 'a:(-1,1)'")
    body = node[3:-1]
    try:
        return tuple(int(part) for part in body.split(",") if part != "")
    except ValueError:
        raise SchemaError(field, f"not a root identifier: {node!r}") from None


def nilpotent_from_json(
    node: JsonNode, field: str, rr: Optional[RestrictedRoots] = None
) -> Matrix:
    """{"matrix": grid} directly, or {"coefficients": {root-id: rational}}
    over the restricted root generators (needs the root data)."""
    data = _expect_dict(node, field)
    if "matrix" in data:
        return matrix_from_json(data["matrix"], f"{field}.matrix")
    if "coefficients" in data:
        if rr is None:
            raise SchemaError(
                f"{field}.coefficients",
                "coefficient form needs a domain to resolve root identifiers",
            )
        coeffs = _expect_dict(data["coefficients"], f"{field}.coefficients")
        d = rr.frame.dim
        total = Matrix.zeros(d, d)
        for key in sorted(coeffs):
            coords = root_id_from_json(key, f"{field}.coefficients.{key}")
            if coords not in rr.table or rr.table[coords].vector is None:
                raise SchemaError(
                    f"{field}.coefficients.{key}", "unknown restricted root"
                )
            value = fraction_from_json(coeffs[key], f"{field}.coefficients.{key}")
            total = total + rr.table[coords].vector * Scalar(value)
        return total
    raise SchemaError(field, "nilpotent needs 'matrix' or 'coefficients'")


# -- canonical output --------------------------------------------------------------


def canonical_json(doc: JsonNode) -> str:
    """Byte-stable rendering: sorted keys, fixed separators, newline end."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"
