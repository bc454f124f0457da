"""Command-line entry point.

Exit codes: 0 when every checked statement holds, 1 on a violation, 2 on
usage or guard errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import __version__
from .errors import CurveboundError
from .report import COMMANDS, RunConfig, render
from .spectral import DENSE_GUARD


def _rational(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="curvebound", description="Curvature, isoperimetry and spectral bounds on graphs.")
    parser.add_argument("--version", action="version", version=f"curvebound {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("source", help="graph file or gen:<family>:<params> spec")
    common.add_argument("--format", dest="fmt", choices=("json", "csv", "human"), default="human")
    common.add_argument("--laziness", type=_rational, default=Fraction(1, 2), help="lazy walk holding probability p/q")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled pair checks")
    common.add_argument("--max-dense", type=int, default=DENSE_GUARD, help="vertex limit for the dense eigensolver")
    cut = argparse.ArgumentParser(add_help=False)
    cut.add_argument("--sigma", default="auto", help="auto, middle-slice, sphere:<x>,<r> or a vertex-list file")
    cut.add_argument(
        "--envelope", default="empirical", help="empirical, constant, curvature or file:<csv with k,nu,mu>"
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("curvature", parents=[common], help="per-edge curvature")
    p.add_argument("--interior-only", action="store_true", help="hide edges near a truncation boundary")
    p = sub.add_parser("cheeger", parents=[common], help="Cheeger constants")
    p.add_argument("--kind", choices=("edge", "inner", "outer"), default="outer")
    p.add_argument("--n", dest="cells", type=int, default=1, help="number of cells for h_out(n)")
    sub.add_parser("shells", parents=[common, cut], help="shell table and envelope")
    sub.add_parser("bound", parents=[common, cut], help="eigenvalue bounds against the true spectrum")
    sub.add_parser("spectrum", parents=[common], help="normalized Laplacian spectrum")
    sub.add_parser("verify", parents=[common, cut], help="full pipeline with verdicts")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        source=args.source,
        laziness=args.laziness,
        envelope=getattr(args, "envelope", "empirical"),
        sigma=getattr(args, "sigma", "auto"),
        fmt=args.fmt,
        seed=args.seed,
        max_dense=args.max_dense,
        interior_only=getattr(args, "interior_only", False),
        kind=getattr(args, "kind", "outer"),
        cells=getattr(args, "cells", 1),
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = config_from_args(args)
    if not 0 <= config.laziness < 1:
        parser.error("laziness must lie in [0, 1)")
    try:
        doc = COMMANDS[config.command](config)
    except (CurveboundError, OSError) as exc:
        print(f"curvebound: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(render(doc, config.fmt))
    return doc.exit_code


if __name__ == "__main__":
    sys.exit(main())
