"""Flat key-value run configuration.

    # comment
    [run]
    experiment = theorem2
    spectrum = integer          # preset name or path to a spectrum file
    R_grid = 2, 4, 6, 8
    s_samples = 1.5 0; 2 0      # re im pairs separated by ';'
    [tolerances]
    limit = 1e-3
    [output]
    json = out/theorem2.json
    csv = out/theorem2.csv
    plotdata = out/theorem2.dat

Keys before any section header belong to [run]. Parsing is done by the
standard ``configparser``; line numbers for field errors are recovered by
locating the key in the source text.
"""
from __future__ import annotations

import configparser
import math
import os
import re
from dataclasses import dataclass, field

from .errors import ConfigError

__all__ = ["EXPERIMENTS", "DEFAULT_R_GRID", "DEFAULT_TOLERANCE", "RunConfig", "parse_config", "load_config"]

EXPERIMENTS = (
    "theorem1",
    "theorem2",
    "aps-vs-chiral",
    "cylinder-identity",
    "gamma-limit",
    "zeta-at-zero",
    "spectral-gap",
    "parametrix",
    "mode-det",
)
DEFAULT_R_GRID = (2.0, 4.0, 6.0, 8.0)
DEFAULT_TOLERANCE = 1e-3
DEFAULT_S_SAMPLES = (complex(1.5), complex(2.0), complex(3.0))

_RUN_KEYS = {"experiment", "spectrum", "r_grid", "s_samples", "piece", "t", "bc", "lambda", "epsilon",
             "workers", "family"}
_OUTPUT_KEYS = {"json", "csv", "plotdata"}


@dataclass(frozen=True)
class RunConfig:
    experiment: str
    spectrum: str
    R_grid: tuple[float, ...] = DEFAULT_R_GRID
    s_samples: tuple[complex, ...] = DEFAULT_S_SAMPLES
    tolerances: dict = field(default_factory=lambda: {"limit": DEFAULT_TOLERANCE})
    output: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    workers: int = 1
    base_dir: str = "."

    @property
    def tolerance(self) -> float:
        return self.tolerances.get("limit", DEFAULT_TOLERANCE)

    def param(self, name: str, default):
        return self.params.get(name, default)


def _line_of(text: str, section: str, key: str) -> int | None:
    current = "run"
    pat = re.compile(r"^\s*([^=#;\[]+?)\s*[=:]")
    for no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped.startswith("[") and stripped.endswith("]"):
            current = stripped[1:-1].strip().lower()
            continue
        m = pat.match(line)
        if m and current == section and m.group(1).strip().lower() == key:
            return no
    return None


def _floats(value: str) -> list[float]:
    return [float(x) for x in re.split(r"[,\s]+", value.strip()) if x]


def _complexes(value: str) -> list[complex]:
    out = []
    for chunk in value.split(";"):
        parts = [p for p in re.split(r"[,\s]+", chunk.strip()) if p]
        if not parts:
            continue
        if len(parts) > 2:
            raise ValueError(f"expected 're im', got {chunk.strip()!r}")
        re_part = float(parts[0])
        im_part = float(parts[1]) if len(parts) == 2 else 0.0
        out.append(complex(re_part, im_part))
    return out


def parse_config(text: str, base_dir: str = ".") -> RunConfig:
    """Validate configuration text and fill defaults (R grid {2,4,6,8}, tolerance 1e-3)."""
    body = text
    first = next((ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith(("#", ";"))), "")
    if not first.startswith("["):
        body = "[run]\n" + text
        offset = 1
    else:
        offset = 0
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",), interpolation=None)
    try:
        parser.read_string(body)
    except configparser.ParsingError as exc:
        line = exc.errors[0][0] - offset if exc.errors else None
        raise ConfigError("malformed line", line=line) from None
    except configparser.DuplicateOptionError as exc:
        raise ConfigError("duplicate key", line=(exc.lineno or 0) - offset, field=exc.option) from None
    except configparser.Error as exc:
        raise ConfigError(str(exc).splitlines()[0]) from None

    def fail(msg: str, section: str, key: str):
        raise ConfigError(msg, line=_line_of(text, section, key), field=key)

    sections = {name.lower(): parser[name] for name in parser.sections()}
    for name in sections:
        if name not in ("run", "tolerances", "output"):
            raise ConfigError(f"unknown section [{name}]", line=_line_of_section(text, name), field=name)
    run = sections.get("run", {})
    for key in run:
        if key not in _RUN_KEYS:
            fail(f"unknown key {key!r}", "run", key)

    experiment = run.get("experiment")
    if experiment is None:
        raise ConfigError("missing required key", field="experiment")
    if experiment not in EXPERIMENTS:
        fail(f"unknown experiment {experiment!r}; expected one of {', '.join(EXPERIMENTS)}", "run", "experiment")
    spectrum = run.get("spectrum")
    if spectrum is None:
        raise ConfigError("missing required key", field="spectrum")

    grid = DEFAULT_R_GRID
    if "r_grid" in run:
        try:
            grid = tuple(_floats(run["r_grid"]))
        except ValueError:
            fail("R_grid must be a list of reals", "run", "r_grid")
        if not grid:
            fail("R_grid is empty", "run", "r_grid")
        if any(not (math.isfinite(r) and r > 0.0) for r in grid):
            fail("R_grid values must be positive", "run", "r_grid")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            fail("R_grid must be strictly increasing", "run", "r_grid")

    s_samples = DEFAULT_S_SAMPLES
    if "s_samples" in run:
        try:
            s_samples = tuple(_complexes(run["s_samples"]))
        except ValueError:
            fail("s_samples must be 're im' pairs separated by ';'", "run", "s_samples")
        if not s_samples:
            fail("s_samples is empty", "run", "s_samples")

    params: dict = {}
    for key, conv in (("piece", int), ("t", float), ("lambda", float), ("epsilon", float)):
        if key in run:
            try:
                params[key] = conv(run[key])
            except ValueError:
                fail(f"{key} has the wrong type", "run", key)
    for key in ("bc", "family"):
        if key in run:
            params[key] = run[key].strip()
    if params.get("piece", 1) not in (1, 2):
        fail("piece must be 1 or 2", "run", "piece")
    if "epsilon" in params and not 0.0 < params["epsilon"] < 1.0:
        fail("epsilon must lie in (0, 1)", "run", "epsilon")
    workers = 1
    if "workers" in run:
        try:
            workers = int(run["workers"])
        except ValueError:
            fail("workers must be an integer", "run", "workers")
        if workers < 1:
            fail("workers must be >= 1", "run", "workers")

    tolerances = {"limit": DEFAULT_TOLERANCE}
    for key, value in sections.get("tolerances", {}).items():
        try:
            tol = float(value)
        except ValueError:
            fail("tolerance must be a real number", "tolerances", key)
        if not (math.isfinite(tol) and tol > 0.0):
            fail("tolerance must be positive", "tolerances", key)
        tolerances[key] = tol

    output = {}
    for key, value in sections.get("output", {}).items():
        if key not in _OUTPUT_KEYS:
            fail(f"unknown output {key!r}", "output", key)
        output[key] = value.strip()

    return RunConfig(experiment=experiment, spectrum=spectrum.strip(), R_grid=grid, s_samples=s_samples,
                     tolerances=tolerances, output=output, params=params, workers=workers, base_dir=base_dir)


def _line_of_section(text: str, name: str) -> int | None:
    for no, line in enumerate(text.splitlines(), start=1):
        if line.strip().lower() == f"[{name}]":
            return no
    return None


def load_config(path: str) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_config(text, base_dir=os.path.dirname(os.path.abspath(path)))
