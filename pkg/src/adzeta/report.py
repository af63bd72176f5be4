"""Deterministic JSON / CSV / plot-data emission for experiment reports.

No timestamps or host data are written, dictionaries are key-sorted and
floats use Python's shortest round-trip repr, so identical reports give
byte-identical files.
"""
from __future__ import annotations

import csv
import io
import json
import math
import os

from . import __version__
from .adiabatic import ExperimentReport
from .config import RunConfig

__all__ = ["report_to_dict", "report_json", "report_csv", "report_plotdata", "emit_report"]


def _num(x):
    if x is None:
        return None
    if isinstance(x, complex):
        return {"re": _num(x.real), "im": _num(x.imag)}
    if isinstance(x, float) and not math.isfinite(x):
        return repr(x)
    return x


def report_to_dict(report: ExperimentReport) -> dict:
    rows = []
    for r in report.rows:
        row = {"R": _num(r.R), "value": _num(r.value),
               "components": {k: _num(v) for k, v in sorted(r.components.items())}}
        if r.error is not None:
            row["error"] = r.error
        rows.append(row)
    return {
        "experiment": report.experiment,
        "spectrum": report.spectrum,
        "rows": rows,
        "target": _num(report.target),
        "fitted_rate": _num(report.fitted_rate),
        "verdict": report.verdict,
        "tolerance": report.tolerance,
        "tolerances": dict(sorted(report.tolerances.items())),
        "notes": list(report.notes),
        "tool_version": __version__,
    }


def report_json(report: ExperimentReport) -> str:
    return json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n"


def _component_names(report: ExperimentReport) -> list[str]:
    names: set[str] = set()
    for r in report.rows:
        names.update(r.components)
    return sorted(names)


def report_csv(report: ExperimentReport) -> str:
    names = _component_names(report)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["R", "value", *names, "error"])
    for r in report.rows:
        w.writerow([_cell(r.R), _cell(r.value), *(_cell(r.components.get(n)) for n in names), r.error or ""])
    return buf.getvalue()


def _cell(x) -> str:
    if x is None:
        return ""
    return repr(x) if isinstance(x, float) else str(x)


def report_plotdata(report: ExperimentReport) -> str:
    """Whitespace-separated columns: R (or row index), value, |value - target|."""
    lines = ["# x value abs_diff_to_target"]
    for i, r in enumerate(report.rows):
        x = r.R if r.R is not None else float(i)
        if r.value is None:
            continue
        diff = abs(r.value - report.target) if report.target is not None else float("nan")
        lines.append(f"{x!r} {r.value!r} {diff!r}")
    return "\n".join(lines) + "\n"


def emit_report(report: ExperimentReport, config: RunConfig) -> list[str]:
    """Write the configured outputs; returns the paths written. OSError propagates."""
    writers = {"json": report_json, "csv": report_csv, "plotdata": report_plotdata}
    written = []
    for key in ("json", "csv", "plotdata"):
        path = config.output.get(key)
        if not path:
            continue
        if not os.path.isabs(path):
            path = os.path.join(config.base_dir, path)
        parent = os.path.dirname(path)
        if parent:
            os.makedirs(parent, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(writers[key](report))
        written.append(path)
    return written
