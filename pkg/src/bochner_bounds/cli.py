"""Command-line front end: check / certify / witness / bench / integrate.

Input is one JSON document ``{"schema": "bochner-bounds/1", "function":
{...}, "hypothesis": {...}}``; witness and bench runs omit ``"function"``.
Exit codes: 0 = success with the hypothesis verified (or zero bench
violations), 2 = input was well-formed but the hypothesis failed (or bench
found violations), 1 = malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from .bounds import BoundReport, bound_report_to_dict, certify, equality_holds
from .gridfn import (
    GridFunction,
    Interval,
    QuadratureRule,
    gridfunction_from_dict,
    gridfunction_to_dict,
    integrate_norm,
    integrate_vector,
)
from .hypotheses import ConditionReport, check, hypothesis_from_dict, hypothesis_to_dict
from .jsonio import SchemaError, dumps
from .witness import FamilySpec, WitnessSpec, make_witness, stats_to_dict, tightness

__all__ = ["RunConfig", "run", "render_table", "main"]

SCHEMA = "bochner-bounds/1"
COMMANDS = ("check", "certify", "witness", "bench", "integrate")


@dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: str
    output_path: str = "-"
    quad: QuadratureRule = QuadratureRule()
    tol: float = 1e-9
    seed: int = 0
    trials: int = 100
    table: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if not self.tol > 0:
            raise ValueError("tol must be > 0")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")


def _load_document(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise SchemaError(f"input: cannot read {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"input: invalid JSON in {path!r}: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("input: top level must be a JSON object")
    if doc.get("schema") != SCHEMA:
        raise SchemaError(f"schema: expected {SCHEMA!r}, got {doc.get('schema')!r}")
    return doc


def _function_from(doc: dict) -> GridFunction:
    if "function" not in doc:
        raise SchemaError("function: missing")
    try:
        return gridfunction_from_dict(doc["function"])
    except ValueError as exc:
        raise SchemaError(f"function: {exc}") from exc


def _hypothesis_from(doc: dict):
    if "hypothesis" not in doc:
        raise SchemaError("hypothesis: missing")
    try:
        return hypothesis_from_dict(doc["hypothesis"])
    except ValueError as exc:
        raise SchemaError(f"hypothesis: {exc}") from exc


def _condition_report_doc(report: ConditionReport) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "condition_report",
        "holds": report.holds,
        "worst_t": report.worst_t,
        "worst_margin": report.worst_margin,
        "checked_points": report.checked_points,
        "note": report.note,
    }


def run(config: RunConfig) -> tuple[int, dict]:
    """Execute one command; returns (exit_status, report_document)."""
    doc = _load_document(config.input_path)
    if config.command == "check":
        f = _function_from(doc)
        h = _hypothesis_from(doc)
        report = check(f, h, config.tol)
        return (0 if report.holds else 2), _condition_report_doc(report)
    if config.command == "certify":
        f = _function_from(doc)
        h = _hypothesis_from(doc)
        report = certify(f, h, config.quad, config.tol)
        out = {"schema": SCHEMA, "kind": "bound_report"}
        out.update(bound_report_to_dict(report))
        return (0 if report.hypothesis_verified else 2), out
    if config.command == "integrate":
        f = _function_from(doc)
        vec = integrate_vector(f, config.quad)
        nrm = integrate_norm(f, config.quad)
        out = {
            "schema": SCHEMA,
            "kind": "integral_report",
            "vector": [[float(z.real), float(z.imag)] for z in vec],
            "norm_integral": nrm,
            "triangle_slack": nrm - float(np.linalg.norm(vec)),
        }
        return 0, out
    if config.command == "witness":
        h = _hypothesis_from(doc)
        interval = _interval_from(doc.get("interval"), default=Interval(0.0, 1.0))
        node_count = int(doc.get("node_count", 33))
        w = make_witness(WitnessSpec(hypothesis=h, interval=interval, node_count=node_count))
        out = {
            "schema": SCHEMA,
            "function": gridfunction_to_dict(w),
            "hypothesis": hypothesis_to_dict(h),
        }
        return 0, out
    # bench
    h = _hypothesis_from(doc)
    gen = doc.get("generator", {})
    if not isinstance(gen, dict):
        raise SchemaError("generator: must be an object")
    family = FamilySpec(
        hypothesis=h,
        seed=config.seed,
        nodes=int(gen.get("nodes", 17)),
        interval=_interval_from(gen.get("interval"), default=Interval(0.0, 1.0)),
        rmin=float(gen.get("rmin", 0.5)),
        rmax=float(gen.get("rmax", 1.5)),
    )
    stats = tightness(config.trials, family, h, config.quad)
    out = {"schema": SCHEMA, "kind": "tightness_stats"}
    out.update(stats_to_dict(stats))
    return (0 if stats.violations == 0 else 2), out


def _interval_from(d, default: Interval) -> Interval:
    if d is None:
        return default
    try:
        return Interval(float(d["a"]), float(d["b"]))
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"interval: expected an object with fields a, b: {exc!r}") from exc


def _equality_label(report: BoundReport, tol: float) -> str:
    if report.equality_vector is None:
        return "n/a"
    return "yes" if equality_holds(report, tol) else "no"


def render_table(reports, tol: float = 1e-9) -> str:
    """Aligned text table over bound reports, sorted by tag then coefficient desc."""
    reports = list(reports)
    if not reports:
        raise ValueError("no reports to render")
    rows = [("hypothesis", "coefficient", "lower_bound", "true_norm", "gap", "equality")]
    for r in sorted(reports, key=lambda r: (r.hypothesis_tag, -r.coefficient)):
        rows.append(
            (
                r.hypothesis_tag,
                format(r.coefficient, ".9g"),
                format(r.lower_bound, ".9g"),
                format(r.true_norm, ".9g"),
                format(r.gap, ".9g"),
                _equality_label(r, tol),
            )
        )
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    return "\n".join(lines) + "\n"


def _to_csv(doc: dict) -> str:
    scalars = [
        (k, v) for k, v in doc.items() if isinstance(v, (int, float, str, bool)) or v is None
    ]
    header = ",".join(k for k, _ in scalars)
    cells = []
    for _, v in scalars:
        if isinstance(v, bool):
            cells.append("true" if v else "false")
        elif isinstance(v, float):
            cells.append(format(v, ".17g"))
        elif v is None:
            cells.append("")
        else:
            cells.append(str(v))
    return header + "\n" + ",".join(cells) + "\n"


def _write_output(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="bochner-bounds",
        description="Check pointwise hypotheses and certify reverse triangle inequality "
        "lower bounds for sampled vector-valued functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, needs_bench in (
        ("check", False),
        ("certify", False),
        ("witness", False),
        ("bench", True),
        ("integrate", False),
    ):
        p = sub.add_parser(name)
        p.add_argument("--input", required=True, help="path to the input JSON document")
        p.add_argument("--output", default="-", help="output path, *.csv for CSV, '-' for stdout")
        p.add_argument("--tol", type=float, default=1e-9, help="hypothesis check tolerance")
        p.add_argument(
            "--quad-kind",
            default="composite-simpson",
            choices=("composite-simpson", "trapezoid-on-nodes"),
            help="quadrature rule",
        )
        p.add_argument(
            "--quad-refine", type=int, default=8, help="subdivisions per node interval"
        )
        p.add_argument(
            "--quad-tol", type=float, default=1e-10, help="refinement comparison tolerance"
        )
        if needs_bench:
            p.add_argument("--seed", type=int, default=0, help="base seed (trial i uses seed+i)")
            p.add_argument("--trials", type=int, default=100, help="number of trials")
        if name == "certify":
            p.add_argument("--table", action="store_true", help="render a text table")
    args = parser.parse_args(argv)
    try:
        config = RunConfig(
            command=args.command,
            input_path=args.input,
            output_path=args.output,
            quad=QuadratureRule(kind=args.quad_kind, refinement=args.quad_refine, tol=args.quad_tol),
            tol=args.tol,
            seed=getattr(args, "seed", 0),
            trials=getattr(args, "trials", 100),
            table=getattr(args, "table", False),
        )
        if config.command == "certify" and config.table:
            doc_in = _load_document(config.input_path)
            report = certify(
                _function_from(doc_in), _hypothesis_from(doc_in), config.quad, config.tol
            )
            _write_output(render_table([report], config.tol), config.output_path)
            return 0 if report.hypothesis_verified else 2
        status, doc = run(config)
    except (SchemaError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if config.output_path.endswith(".csv"):
        _write_output(_to_csv(doc), config.output_path)
    else:
        _write_output(dumps(doc), config.output_path)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
