"""Command line front end.

    adzeta run CONFIG
    adzeta preset-list
    adzeta spectrum-check FILE
    adzeta mode-det --bc aps> --lambda 1 --length 5
    adzeta gamma-limit
    adzeta cylinder-identity --s 2,0 --spectrum integer

Exit codes: 0 success / verdict pass, 2 verdict fail, 1 error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__, modes, specfun
from .errors import AdzetaError
from .modes import BC, Interval, PairKind, PairProblem

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FAIL = 2


def _cmd_run(args) -> int:
    from .adiabatic import run_experiment
    from .config import load_config
    from .report import emit_report, report_json

    cfg = load_config(args.config)
    report = run_experiment(cfg)
    written = emit_report(report, cfg)
    if not written or args.print:
        sys.stdout.write(report_json(report))
    for r in report.failures:
        print(f"R={r.R}: {r.error}", file=sys.stderr)
    print(f"{report.experiment}: {report.verdict}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAIL


def _cmd_preset_list(args) -> int:
    from .spectrum import PRESETS

    for name, fam in sorted(PRESETS.items()):
        print(f"{name}\talpha={fam.alpha:g} beta={fam.beta:g} multiplicity={fam.multiplicity}")
    return EXIT_OK


def _cmd_spectrum_check(args) -> int:
    from .spectrum import load_spectrum_file, zeta_B2, zeta_B2_deriv0

    spec = load_spectrum_file(args.file)
    out = {
        "entries": len(spec.lam),
        "total_multiplicity": int(sum(spec.mult)),
        "lambda_min": float(spec.lambda_min),
        "zeta_B2_at_2": float(zeta_B2(spec, 2.0)),
        "zeta_B2_at_0": float(zeta_B2(spec, 0.0)),
        "zeta_B2_deriv0": zeta_B2_deriv0(spec),
    }
    print(json.dumps(out, indent=2, sort_keys=True))
    return EXIT_OK


def _cmd_mode_det(args) -> int:
    geo = Interval(args.length, BC.DIRICHLET, BC.DIRICHLET)
    try:
        kind = PairKind(args.bc)
        problems = modes.expand_pair(PairProblem(args.lam, kind, geo))
    except ValueError:
        parts = args.bc.split(",")
        if len(parts) != 2:
            raise AdzetaError(f"unknown boundary pair {args.bc!r}") from None
        problems = (modes.ModeProblem(args.lam, Interval(args.length, BC.parse(parts[0]), BC.parse(parts[1]))),)
    rows = []
    for p in problems:
        rows.append({"problem": p.label, "closed": modes.zeta_det_closed(p), "oracle": modes.zeta_det_oracle(p)})
    total = {"closed": sum(r["closed"] for r in rows), "oracle": sum(r["oracle"] for r in rows)}
    print(json.dumps({"bc": args.bc, "lambda": args.lam, "length": args.length, "scalars": rows,
                      "ln_det": total}, indent=2, sort_keys=True))
    return EXIT_OK


def _cmd_gamma_limit(args) -> int:
    from .adiabatic import _richardson_naive

    val = float(specfun.gamma_limit_F(0.0))
    print(json.dumps({"F(0)": val, "target": -0.5 * specfun.LN2, "richardson_naive": _richardson_naive()},
                     indent=2, sort_keys=True))
    return EXIT_OK


def _parse_complex(text: str) -> complex:
    parts = [p for p in text.replace(",", " ").split() if p]
    if not 1 <= len(parts) <= 2:
        raise argparse.ArgumentTypeError("expected 're,im'")
    return complex(float(parts[0]), float(parts[1]) if len(parts) == 2 else 0.0)


def _cmd_cylinder_identity(args) -> int:
    from .adiabatic import resolve_spectrum
    from .cylinder import appendix_identity, quintic

    spec = resolve_spectrum(args.spectrum)
    lhs, rhs = appendix_identity(spec, args.s, quintic(1.0 / 3.0, 2.0 / 3.0))
    rel = abs(lhs - rhs) / (1.0 + abs(lhs))
    print(json.dumps({"s": [args.s.real, args.s.imag], "lhs": [lhs.real, lhs.imag], "rhs": [rhs.real, rhs.imag],
                      "relative_difference": rel}, indent=2, sort_keys=True))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="adzeta", description="zeta-determinant gluing experiments")
    ap.add_argument("--version", action="version", version=f"adzeta {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run an experiment from a config file")
    p.add_argument("config")
    p.add_argument("--print", action="store_true", help="also print the JSON report")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("preset-list", help="list tangential spectrum presets")
    p.set_defaults(func=_cmd_preset_list)

    p = sub.add_parser("spectrum-check", help="validate a spectrum file and print its zeta data")
    p.add_argument("file")
    p.set_defaults(func=_cmd_spectrum_check)

    p = sub.add_parser("mode-det", help="log-determinant of one mode problem, closed form and oracle")
    p.add_argument("--bc", required=True, help="pair (aps>, aps<, chiral+, chiral-) or scalar ends like D,R+")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--length", type=float, required=True)
    p.set_defaults(func=_cmd_mode_det)

    p = sub.add_parser("gamma-limit", help="value of the Gamma-limit function at 0")
    p.set_defaults(func=_cmd_gamma_limit)

    p = sub.add_parser("cylinder-identity", help="both sides of the cylinder zeta identity")
    p.add_argument("--s", type=_parse_complex, required=True, help="re,im")
    p.add_argument("--spectrum", default="integer")
    p.set_defaults(func=_cmd_cylinder_identity)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors; 2 is reserved for a failed verdict here
        return EXIT_OK if exc.code in (0, None) else EXIT_ERROR
    try:
        return args.func(args)
    except (AdzetaError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
