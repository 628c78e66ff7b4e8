"""Command line surface: one pure job per invocation.

Every subcommand reads a JSON document, dispatches to the library, and
prints either canonical JSON or a plain-text report.  There is no
randomness and no environment coupling, so identical inputs give
byte-identical outputs.

Exit codes: 0 on success, 1 when the library rejects the input on
mathematical grounds (the message is the library's own), 2 when the
document does not fit the subcommand's schema (the error names the
offending field).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .asympt import (
    HorosphericalSequence,
    ParabolicDescriptor,
    TailPolicy,
    convergence_check,
    horospherical_sequence,
    membership_scan,
    nilpotent_orbit,
    siegel_membership,
)
from .boundary import BoundaryReport, boundary_report
from .domain import Filtration, HodgeFrame, domain_dimensions
from .jsonio import (
    JsonNode,
    SchemaError,
    canonical_json,
    filtration_from_json,
    fraction_from_json,
    fraction_to_json,
    frame_from_json,
    frame_to_json,
    nilpotent_from_json,
    root_id,
)
from .linalg import Matrix, nilpotent_exp
from .nilpotents import (
    canonical_parabolic,
    horizontality_check,
    jm_triple,
    weight_filtration,
    weight_filtration_by_powers,
    weighted_dynkin,
)
from .roots import restrict_roots
from .scalars import I, Scalar

SUBCOMMANDS = (
    "describe-domain",
    "roots",
    "sigma",
    "grading",
    "weight-filtration",
    "parabolic",
    "dynkin",
    "horizontal",
    "boundary-report",
    "orbit-check",
    "converge-check",
    "siegel",
)

FORMATS = ("json", "text")
FIELDS = ("Q", "R")


@dataclass(frozen=True)
class JobSpec:
    """One deterministic unit of work: a subcommand, its input document,
    the output format, and the two dispatch flags."""

    subcommand: str
    document: JsonNode
    format: str = "json"
    center: Optional[int] = None
    field: str = "Q"


def serialize_job(job: JobSpec) -> dict:
    return {
        "subcommand": job.subcommand,
        "input": job.document,
        "format": job.format,
        "center": job.center,
        "field": job.field,
    }


def parse_job(node: JsonNode) -> JobSpec:
    if not isinstance(node, dict):
        raise SchemaError("", "expected a job object")
    name = node.get("subcommand")
    if name not in SUBCOMMANDS:
        raise SchemaError("subcommand", f"unknown subcommand: {name!r}")
    if "input" not in node:
        raise SchemaError("input", "missing field")
    fmt = node.get("format", "json")
    if fmt not in FORMATS:
        raise SchemaError("format", f"unknown format: {fmt!r}")
    center = node.get("center")
    if center is not None and (not isinstance(center, int) or isinstance(center, bool)):
        raise SchemaError("center", "expected an integer")
    field = node.get("field", "Q")
    if field not in FIELDS:
        raise SchemaError("field", f"unknown field: {field!r}")
    return JobSpec(name, node["input"], fmt, center, field)


# -- shared input pieces -----------------------------------------------------------


def _framed(doc: JsonNode, field_flag: str):
    data = doc if isinstance(doc, dict) else {}
    if "domain" in data:
        frame = frame_from_json(data["domain"], "domain")
    else:
        frame = frame_from_json(doc, "")
    return frame, restrict_roots(frame, field=field_flag)


def _nilpotent_input(doc: JsonNode, rr) -> Matrix:
    data = doc if isinstance(doc, dict) else {}
    if "nilpotent" not in data:
        raise SchemaError("nilpotent", "missing field")
    return nilpotent_from_json(data["nilpotent"], "nilpotent", rr=rr)


def _limit_filtration(doc: JsonNode, frame: HodgeFrame, n: Matrix) -> Filtration:
    """The document's filtration, or the model orbit limit exp(-iN)F_0."""
    if isinstance(doc, dict) and "filtration" in doc:
        return filtration_from_json(doc["filtration"], "filtration")
    g = nilpotent_exp(n, -I)
    ref = frame.reference_filtration()
    return Filtration(ref.weight, [p.image_under(g) for p in ref.pieces])


def _fraction_list(node: JsonNode, field: str) -> list[Fraction]:
    if not isinstance(node, list):
        raise SchemaError(field, "expected an array")
    return [fraction_from_json(x, f"{field}[{k}]") for k, x in enumerate(node)]


def _descriptor(node: JsonNode, field: str) -> ParabolicDescriptor:
    if not isinstance(node, dict):
        raise SchemaError(field, "expected an object")
    raw = node.get("simple_roots")
    if not isinstance(raw, list) or not all(isinstance(x, str) for x in raw):
        raise SchemaError(f"{field}.simple_roots", "expected an array of root names")
    return ParabolicDescriptor(tuple(raw))


# -- handlers ----------------------------------------------------------------------


def _describe_domain(job: JobSpec) -> dict:
    frame, rr = _framed(job.document, job.field)
    out = dict(domain_dimensions(frame))
    out["rank_s"] = rr.rank
    out["dim_H"] = frame.dim
    return out


def _roots(job: JobSpec) -> dict:
    _, rr = _framed(job.document, job.field)
    rows = []
    for coords, entry in sorted(rr.table.items()):
        rows.append(
            {
                "id": root_id(coords),
                "coords": list(coords),
                "degree": list(entry.degrees),
                "multiplicity": rr.root_spaces[coords].dim,
            }
        )
    return {"rank": rr.rank, "roots": rows}


def _sigma(job: JobSpec) -> dict:
    _, rr = _framed(job.document, job.field)
    splits = rr.split_generators()
    commuting = all(
        a @ b == b @ a for i, a in enumerate(splits) for b in splits[i + 1 :]
    )
    return {
        "rank_s": rr.rank,
        "sigma": [
            {"id": root_id(pkg.root), "coords": list(pkg.root)} for pkg in rr.packages
        ],
        "commuting": commuting,
    }


def _grading(job: JobSpec) -> dict:
    frame, _ = _framed(job.document, job.field)
    dims = frame.graded_dims()
    return {
        "dims": {str(r): d for r, d in sorted(dims.items())},
        "dim_g": sum(dims.values()),
    }


def _weight_filtration(job: JobSpec) -> dict:
    doc = job.document
    data = doc if isinstance(doc, dict) else {}
    if "domain" in data:
        frame, rr = _framed(doc, job.field)
        n = _nilpotent_input(doc, rr)
        wf = weight_filtration(frame, n, "H", c=job.center, rr=rr)
    else:
        if "nilpotent" not in data:
            raise SchemaError("nilpotent", "missing field")
        n = nilpotent_from_json(data["nilpotent"], "nilpotent")
        if job.center is None:
            raise SchemaError("center", "center required without a domain")
        wf = weight_filtration_by_powers(n, job.center)
    dims = wf.graded_dims()
    return {
        "center": wf.center,
        "lowest": wf.lowest,
        "highest": wf.highest,
        "jumps": [j for j in wf.levels() if dims.get(j, 0) > 0],
        "graded_dims": {str(j): d for j, d in sorted(dims.items()) if d > 0},
    }


def _parabolic(job: JobSpec) -> dict:
    frame, rr = _framed(job.document, job.field)
    n = _nilpotent_input(job.document, rr)
    triple = jm_triple(frame, n, rr=rr)
    par = canonical_parabolic(rr, triple)
    return {
        "dim_q": par.algebra.dim,
        "dim_levi": par.levi.dim,
        "dim_split_center": par.split_center.dim,
        "dim_nilradical": par.nilradical.dim,
        "dim_anisotropic": par.anisotropic.dim,
        "simple_roots": [root_id(c) for c in par.simple_roots],
        "vanishing": [root_id(c) for c in par.vanishing],
        "y_coords": [fraction_to_json(x) for x in par.y_coords],
    }


def _dynkin(job: JobSpec) -> dict:
    frame, rr = _framed(job.document, job.field)
    n = _nilpotent_input(job.document, rr)
    diagram = weighted_dynkin(rr, jm_triple(frame, n, rr=rr))
    return {
        "simple_roots": [root_id(c) for c in diagram.simple_roots],
        "values": [fraction_to_json(x) for x in diagram.values],
        "labels": [fraction_to_json(x) for x in diagram.labels],
    }


def _horizontal(job: JobSpec) -> dict:
    _, rr = _framed(job.document, job.field)
    n = _nilpotent_input(job.document, rr)
    witness = horizontality_check(rr, n)
    return {
        "horizontal": witness.horizontal,
        "contributing": [root_id(c) for c in witness.contributing],
    }


def _boundary_report(job: JobSpec) -> dict:
    frame, rr = _framed(job.document, job.field)
    n = _nilpotent_input(job.document, rr)
    f_inf = _limit_filtration(job.document, frame, n)
    report = boundary_report(frame, n, f_inf, rr=rr)
    return _boundary_to_json(report)


def _boundary_to_json(report: BoundaryReport) -> dict:
    levels = []
    for lv in report.levels:
        levels.append(
            {
                "level": lv.level,
                "weight": lv.weight,
                "dim_graded": lv.dim_graded,
                "dim_primitive": lv.dim_primitive,
                "sign": lv.sign,
                "nondegenerate": lv.nondegenerate_on_graded,
                "signature": list(lv.signature) if lv.signature is not None else None,
                "f_table": {str(p): d for p, d in sorted(lv.f_table.items())},
                "hodge_numbers": list(lv.hodge_numbers),
                "polarized": lv.polarized,
                "dim_classifying": lv.dim_classifying,
                "dim_form_symmetries": lv.dim_form_symmetries,
            }
        )
    fib = None
    if report.fibration is not None:
        fib = {
            "dim_m": report.fibration.dim_m,
            "dim_centralizer_cap_m": report.fibration.dim_centralizer_cap_m,
            "dim_isotropy_cap_m": report.fibration.dim_isotropy_cap_m,
            "sum_dim_form_symmetries": report.fibration.sum_dim_form_symmetries,
            "dim_primitive_classifying": report.fibration.dim_primitive_classifying,
        }
    return {
        "center": report.center,
        "levels": levels,
        "fibration": fib,
        "trivial_on_graded": report.trivial_on_graded,
        "limit_matches_basepoint": report.limit_matches_basepoint,
    }


def _orbit_check(job: JobSpec) -> dict:
    frame, rr = _framed(job.document, job.field)
    n = _nilpotent_input(job.document, rr)
    f_inf = _limit_filtration(job.document, frame, n)
    doc = job.document if isinstance(job.document, dict) else {}
    if "y_grid" not in doc:
        raise SchemaError("y_grid", "missing field")
    ys = _fraction_list(doc["y_grid"], "y_grid")
    orbit = nilpotent_orbit(frame, n, f_inf)
    scan = membership_scan(orbit, ys)
    return {
        "memberships": list(scan.memberships),
        "threshold": fraction_to_json(scan.threshold)
        if scan.threshold is not None
        else None,
    }


def _sequence_input(doc: JsonNode) -> HorosphericalSequence:
    data = doc if isinstance(doc, dict) else {}
    if "descriptor" not in data:
        raise SchemaError("descriptor", "missing field")
    descriptor = _descriptor(data["descriptor"], "descriptor")
    if "entries" not in data:
        raise SchemaError("entries", "missing field")
    if not isinstance(data["entries"], list):
        raise SchemaError("entries", "expected an array")
    entries = []
    for k, raw in enumerate(data["entries"]):
        if not isinstance(raw, dict):
            raise SchemaError(f"entries[{k}]", "expected an object")
        u = _fraction_list(raw.get("u", []), f"entries[{k}].u")
        a = _fraction_list(raw.get("a", []), f"entries[{k}].a")
        m = _fraction_list(raw.get("m", []), f"entries[{k}].m")
        entries.append((u, a, m))
    limit = _fraction_list(data.get("limit", []), "limit")
    return horospherical_sequence(descriptor, entries, limit)


def _tail_policy(doc: JsonNode) -> TailPolicy:
    data = doc if isinstance(doc, dict) else {}
    raw = data.get("policy")
    if raw is None:
        return TailPolicy()
    if not isinstance(raw, dict):
        raise SchemaError("policy", "expected an object")
    window = raw.get("window", 3)
    if not isinstance(window, int) or isinstance(window, bool):
        raise SchemaError("policy.window", "expected an integer")
    return TailPolicy(
        window=window,
        growth_margin=fraction_from_json(raw.get("growth_margin", 0), "policy.growth_margin"),
        tolerance=fraction_from_json(raw.get("tolerance", 0), "policy.tolerance"),
    )


def _converge_check(job: JobSpec) -> dict:
    seq = _sequence_input(job.document)
    verdict = convergence_check(seq, _tail_policy(job.document))
    return {"verdict": verdict.verdict, "first_violation": verdict.first_violation}


def _siegel(job: JobSpec) -> dict:
    data = job.document if isinstance(job.document, dict) else {}
    if "descriptor" not in data:
        raise SchemaError("descriptor", "missing field")
    descriptor = _descriptor(data["descriptor"], "descriptor")
    if "values" not in data:
        raise SchemaError("values", "missing field")
    values = _fraction_list(data["values"], "values")
    if "t" not in data:
        raise SchemaError("t", "missing field")
    t = fraction_from_json(data["t"], "t")
    return {"member": siegel_membership(values, descriptor, t)}


HANDLERS = {
    "describe-domain": _describe_domain,
    "roots": _roots,
    "sigma": _sigma,
    "grading": _grading,
    "weight-filtration": _weight_filtration,
    "parabolic": _parabolic,
    "dynkin": _dynkin,
    "horizontal": _horizontal,
    "boundary-report": _boundary_report,
    "orbit-check": _orbit_check,
    "converge-check": _converge_check,
    "siegel": _siegel,
}


def run(job: JobSpec) -> dict:
    """Dispatch one job; raises SchemaError for malformed documents and
    ValueError when the library rejects the mathematics."""
    if job.subcommand not in HANDLERS:
        raise SchemaError("subcommand", f"unknown subcommand: {job.subcommand!r}")
    return HANDLERS[job.subcommand](job)


# -- text rendering ----------------------------------------------------------------


def _bool(x: bool) -> str:
    return "true" if x else "false"


def _cell(value) -> str:
    if isinstance(value, bool):
        return _bool(value)
    if value is None:
        return "-"
    if isinstance(value, list):
        return ",".join(_cell(v) for v in value) if value else "-"
    return str(value)


def _table(headers: list[str], rows: list[list]) -> list[str]:
    grid = [headers] + [[_cell(x) for x in row] for row in rows]
    widths = [max(len(r[k]) for r in grid) for k in range(len(headers))]
    return ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in grid]


def render_report(doc: dict, subcommand: str) -> str:
    """Plain-text rendering with a stable column order per subcommand."""
    lines: list[str] = []
    if subcommand == "boundary-report":
        lines.append(f"center: {doc['center']}")
        if not doc["levels"]:
            lines.append("no boundary levels")
        else:
            headers = [
                "level",
                "weight",
                "dim_gr",
                "dim_P",
                "sign",
                "signature",
                "f",
                "hodge",
                "polarized",
            ]
            rows = [
                [
                    lv["level"],
                    lv["weight"],
                    lv["dim_graded"],
                    lv["dim_primitive"],
                    lv["sign"],
                    lv["signature"],
                    [lv["f_table"][k] for k in sorted(lv["f_table"], key=int)],
                    lv["hodge_numbers"],
                    lv["polarized"],
                ]
                for lv in doc["levels"]
            ]
            lines.extend(_table(headers, rows))
        if doc["fibration"] is not None:
            for key in sorted(doc["fibration"]):
                lines.append(f"{key}: {doc['fibration'][key]}")
        lines.append(f"trivial_on_graded: {_bool(doc['trivial_on_graded'])}")
        lines.append(f"limit_matches_basepoint: {_bool(doc['limit_matches_basepoint'])}")
    elif subcommand == "roots":
        lines.append(f"rank: {doc['rank']}")
        lines.extend(
            _table(
                ["id", "coords", "degree", "multiplicity"],
                [
                    [r["id"], r["coords"], r["degree"], r["multiplicity"]]
                    for r in doc["roots"]
                ],
            )
        )
    elif subcommand == "orbit-check":
        lines.extend(
            _table(["membership"], [[m] for m in doc["memberships"]])
        )
        threshold = doc["threshold"]
        lines.append(
            "threshold: none found" if threshold is None else f"threshold: {threshold}"
        )
    elif subcommand == "converge-check":
        lines.append(f"verdict: {doc['verdict']}")
        violation = doc["first_violation"]
        lines.append(
            "first violation: none" if violation is None else f"first violation: {violation}"
        )
    else:
        for key in sorted(doc):
            value = doc[key]
            if isinstance(value, dict):
                lines.append(f"{key}:")
                for sub in sorted(value, key=lambda s: (len(s), s)):
                    lines.append(f"  {sub}: {_cell(value[sub])}")
            else:
                lines.append(f"{key}: {_cell(value)}")
    return "\n".join(lines) + "\n"


# -- entry point -------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hodgerbs",
        description="Exact computations on classifying spaces of polarized "
        "Hodge structures: root data, weight filtrations, boundary "
        "reports, and orbit diagnostics.",
    )
    parser.add_argument("subcommand", choices=SUBCOMMANDS, help="operation to run")
    parser.add_argument(
        "--input", required=True, help="path to the JSON input document"
    )
    parser.add_argument(
        "--format", choices=FORMATS, default="json", help="output format"
    )
    parser.add_argument(
        "--center",
        type=int,
        default=None,
        help="central weight for weight-filtration jobs",
    )
    parser.add_argument(
        "--field",
        choices=FIELDS,
        default="Q",
        help="coefficient field for restricted root data",
    )
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        with open(args.input, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        sys.stdout.write(canonical_json({"error": str(exc), "field": "--input"}))
        return 2
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        sys.stdout.write(
            canonical_json({"error": f"invalid JSON: {exc}", "field": "--input"})
        )
        return 2
    job = JobSpec(args.subcommand, document, args.format, args.center, args.field)
    try:
        result = run(job)
    except SchemaError as exc:
        sys.stdout.write(canonical_json({"error": exc.message, "field": exc.field}))
        return 2
    except ValueError as exc:
        sys.stdout.write(canonical_json({"error": str(exc)}))
        return 1
    if job.format == "text":
        sys.stdout.write(render_report(result, job.subcommand))
    else:
        sys.stdout.write(canonical_json(result))
    return 0


if __name__ == "__main__":
    sys.exit(main())
