"""Command-line front end: verdict scans, pointwise curvature, perturbation checks.

Exit codes: 0 verdict computed and not "fails" (or value computed / check
holds), 1 verdict "fails" or perturbation check fails, 2 invalid input or
inadmissible cost, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys
import time
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from . import checker
from .checker import ScanConfig, perturbation_check, scan_table
from .costs import PRESETS, make_cost, preset
from .curvature import MtwInput, mtw_closed, mtw_via_jacobi
from .errors import (AdmissibilityError, MtwError, OutOfRangeError, ParseError,
                     ZeroVectorError)
from .expressions import parse_cost
from .geometry import SpaceForm
from .oracle import StencilConfig, mtw_definitional

SCHEMA_VERSION = 1

CSV_COLUMNS = ["z", "A", "B", "alpha", "beta", "gamma", "delta", "slack_min"]

_INPUT_ERRORS = (ParseError, AdmissibilityError, OutOfRangeError,
                 ZeroVectorError, ValueError)


@dataclass
class RunReport:
    """JSON-serializable record of one CLI invocation."""

    command: str
    cost: str
    curvature: int
    schema_version: int = SCHEMA_VERSION
    dimension: Optional[int] = None
    diameter: Optional[float] = None
    grid: Optional[int] = None
    verdict: Optional[str] = None
    witness: Optional[float] = None
    min_slacks: Optional[dict] = None
    values: Optional[dict] = None
    deviations: Optional[dict] = None
    holds: Optional[bool] = None
    wall_time_ms: float = 0.0

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        return cls(**data)


_QUARTIC_RE = re.compile(r"^quartic\(([^)]*)\)$")


def resolve_cost(text, diameter):
    """Interpret --cost as a preset name, quartic(eps), or an expression."""
    text = text.strip()
    if text in PRESETS and text != "quartic":
        return preset(text, diameter)
    if text == "quartic":
        return preset("quartic", diameter)
    m = _QUARTIC_RE.match(text)
    if m:
        return preset("quartic", diameter, eps=float(m.group(1)))
    return make_cost(text, diameter)


def _parse_vector(text, what):
    try:
        return np.array([float(part) for part in text.split(",")], dtype=float)
    except ValueError:
        raise ValueError(f"{what} must be comma-separated numbers, got {text!r}") from None


def _emit(report, args):
    if getattr(args, "json", False):
        print(json.dumps(report.to_dict()))


def _write_csv(path, table):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        columns = [table[name] for name in CSV_COLUMNS]
        for row in zip(*columns):
            writer.writerow([f"{value:.17g}" for value in row])


def cmd_check(args):
    started = time.perf_counter()
    cost = resolve_cost(args.cost, args.diameter)
    cfg = ScanConfig(diameter=args.diameter, dimension=args.dim,
                     grid_points=args.grid, strict_margin=args.strict_margin)
    verdict, table = scan_table(cost, args.K, cfg)
    if args.csv:
        _write_csv(args.csv, table)
    report = RunReport(
        command="check", cost=cost.text, curvature=args.K, dimension=args.dim,
        diameter=args.diameter, grid=args.grid, verdict=verdict.status,
        witness=verdict.witness, min_slacks=verdict.min_slacks,
        wall_time_ms=1000.0 * (time.perf_counter() - started),
    )
    if args.json:
        _emit(report, args)
    else:
        print(f"{verdict.status}  (min slack {min(verdict.min_slacks.values()):.3e} "
              f"at z = {verdict.witness:.6g})")
    return 0 if verdict.status in (checker.A3S, checker.A3W_ONLY) else 1


def _canonical_input(form, u, v, w):
    base = form.canonical_base()
    return MtwInput(x=base,
                    u=form.frame_tangent(base, u),
                    v=form.frame_tangent(base, v),
                    w=form.frame_tangent(base, w))


def cmd_eval(args):
    started = time.perf_counter()
    cost = resolve_cost(args.cost, args.diameter)
    form = SpaceForm(curvature=args.K, dimension=args.dim)
    vectors = [_parse_vector(text, name)
               for text, name in ((args.u, "--u"), (args.v, "--v"), (args.w, "--w"))]
    for vec in vectors:
        if vec.shape != (args.dim,):
            raise ValueError(f"vectors must have {args.dim} components")
    inp = _canonical_input(form, *vectors)
    values = {}
    if args.method in ("closed", "all"):
        values["closed"] = float(mtw_closed(cost, form, inp))
    if args.method in ("jacobi", "all"):
        values["jacobi"] = float(mtw_via_jacobi(cost, form, inp))
    if args.method in ("oracle", "all"):
        values["oracle"] = float(mtw_definitional(cost, form, inp, StencilConfig()))
    deviations = None
    if args.method == "all":
        names = sorted(values)
        deviations = {f"{a}-{b}": abs(values[a] - values[b])
                      for i, a in enumerate(names) for b in names[i + 1:]}
    report = RunReport(
        command="eval", cost=cost.text, curvature=args.K, dimension=args.dim,
        diameter=args.diameter, values=values, deviations=deviations,
        wall_time_ms=1000.0 * (time.perf_counter() - started),
    )
    if args.json:
        _emit(report, args)
    else:
        for name in sorted(values):
            print(f"{name}: {values[name]:.12g}")
        if deviations:
            for pair in sorted(deviations):
                print(f"|{pair}| = {deviations[pair]:.3e}")
    return 0


def cmd_perturb(args):
    started = time.perf_counter()
    if args.k >= 0.0:
        raise ValueError("--k must be negative")
    if args.b <= 0.0:
        raise ValueError("--b must be positive")
    f = parse_cost(args.f)
    result = perturbation_check(f, args.k, args.b, grid_points=args.grid)
    report = RunReport(
        command="perturb", cost=args.f.strip(), curvature=0, grid=args.grid,
        holds=result.holds, witness=result.witness,
        wall_time_ms=1000.0 * (time.perf_counter() - started),
    )
    if args.json:
        _emit(report, args)
    elif result.holds:
        print(f"holds  (worst LHS {result.worst_lhs:.6g} < k = {args.k:.6g})")
    else:
        print(f"fails at z = {result.witness:.6g} "
              f"(worst LHS {result.worst_lhs:.6g} >= k = {args.k:.6g})")
    return 0 if result.holds else 1


def cmd_presets(args):
    print(f"{'name':<16} {'expression':<22} {'curvatures':<12} known verdict")
    for name, info in PRESETS.items():
        ks = ",".join(f"{k:+d}" for k in info.curvatures)
        print(f"{name:<16} {info.text:<22} {ks:<12} {info.verdict_note}")
    print("\nquartic takes its perturbation size inline: --cost 'quartic(0.001)'")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mtwcheck",
        description="Verify weak/strong curvature conditions for radial "
                    "transport costs on constant-curvature model spaces.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p, with_dim=True):
        p.add_argument("--cost", required=True,
                       help="preset name, quartic(eps), or an expression in z")
        p.add_argument("--K", type=int, choices=(-1, 0, 1), required=True,
                       help="sectional curvature of the model space")
        if with_dim:
            p.add_argument("--dim", type=int, required=True, help="manifold dimension")
        p.add_argument("--diameter", type=float, default=2.0,
                       help="working diameter D (default 2.0)")
        p.add_argument("--json", action="store_true", help="emit a JSON report")

    p_check = sub.add_parser("check", help="scan the coefficient inequalities")
    add_common(p_check)
    p_check.add_argument("--grid", type=int, default=4096, help="scan grid size")
    p_check.add_argument("--strict-margin", type=float, default=1e-12, dest="strict_margin")
    p_check.add_argument("--csv", help="write per-point columns to this path")
    p_check.set_defaults(func=cmd_check)

    p_eval = sub.add_parser("eval", help="curvature at one input by any route")
    add_common(p_eval)
    p_eval.add_argument("--u", required=True, help="comma-separated frame components")
    p_eval.add_argument("--v", required=True, help="comma-separated frame components")
    p_eval.add_argument("--w", required=True, help="comma-separated frame components")
    p_eval.add_argument("--method", choices=("closed", "jacobi", "oracle", "all"),
                        default="all")
    p_eval.set_defaults(func=cmd_eval)

    p_pert = sub.add_parser("perturb", help="check the perturbation criterion")
    p_pert.add_argument("--f", required=True, help="perturbation profile, expression in z")
    p_pert.add_argument("--k", type=float, required=True, help="negative threshold")
    p_pert.add_argument("--b", type=float, required=True, help="right interval endpoint")
    p_pert.add_argument("--grid", type=int, default=1024)
    p_pert.add_argument("--json", action="store_true")
    p_pert.set_defaults(func=cmd_perturb)

    p_presets = sub.add_parser("presets", help="list the built-in cost catalog")
    p_presets.set_defaults(func=cmd_presets)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (MtwError, FloatingPointError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
