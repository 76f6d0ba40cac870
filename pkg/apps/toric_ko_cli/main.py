#!/usr/bin/env python3
"""
toric-ko command line.

Reads a `.toric` problem (or a bundled example) and prints the face ring,
the A(1) splitting, Ext charts and the ko / KO / KO^* groups.

Exit codes: 0 ok, 2 invalid input, 3 unparseable input, 4 collapse of the
Adams spectral sequence not established (E2 shown only), 1 internal error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

# Ensure monorepo roots are on sys.path
ROOT = Path(__file__).resolve().parents[2]
if str(ROOT / "packages/toric_ko") not in sys.path:
    sys.path.insert(0, str(ROOT / "packages/toric_ko"))

from rich.console import Console  # noqa: E402
from rich.panel import Panel  # noqa: E402
from rich.text import Text  # noqa: E402

from toric_ko import corpus  # noqa: E402
from toric_ko.config import load_env, settings  # noqa: E402
from toric_ko.errors import (  # noqa: E402
    CollapseNotEstablishedError,
    SpecSyntaxError,
    ToricKOError,
    ValidationError,
)
from toric_ko.ext_charts import ext_m, ext_s0  # noqa: E402
from toric_ko.pipeline import Report, run_pipeline  # noqa: E402
from toric_ko.problem import ProblemSpec, parse_spec, render_spec  # noqa: E402
from toric_ko.render import render_chart, render_chart_svg, render_report_json, render_report_text  # noqa: E402

logger = logging.getLogger("ToricKO.CLI")

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_VALIDATION = 2
EXIT_PARSE = 3
EXIT_COLLAPSE = 4

SECTIONS = {
    "cohomology": ["overview", "cohomology", "warnings"],
    "decompose": ["overview", "decomposition", "warnings"],
    "ko": ["overview", "groups", "spin", "warnings"],
    "report": None,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("spec", nargs="?", help="Path to a .toric problem file")
    common.add_argument("--example", default=None, help="Use a bundled example instead of a file")
    common.add_argument("--mode", choices=["manifold", "singular"], default=None)
    common.add_argument("--trust-sphere", action="store_true", help="Require h-vector symmetry and dim H^2k = h_k")
    common.add_argument("--max-degree", type=int, default=None, help="Highest degree in the group tables")
    common.add_argument("--format", choices=["text", "json", "svg"], default=None)
    common.add_argument("--out", default=None, help="Write output to this path")
    common.add_argument("--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="toric-ko",
        description="KO-theory of quasitoric manifolds from a simplicial complex and a characteristic matrix.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    subparsers.add_parser("validate", parents=[common], help="Check K and lambda")
    subparsers.add_parser("cohomology", parents=[common], help="Mod-2 cohomology ring")
    subparsers.add_parser("decompose", parents=[common], help="Sq2 and the A(1) splitting")
    chart = subparsers.add_parser("chart", parents=[common], help="Ext charts")
    chart.add_argument("--which", choices=["e2", "s0", "m"], default="e2")
    chart.add_argument("--max-stem", type=int, default=None)
    chart.add_argument("--max-filt", type=int, default=None)
    subparsers.add_parser("ko", parents=[common], help="ko, KO and KO^* groups")
    subparsers.add_parser("report", parents=[common], help="Everything")
    examples = subparsers.add_parser("examples", help="List or print bundled examples")
    examples.add_argument("--show", default=None, metavar="NAME")
    examples.add_argument("--product", nargs=2, default=None, metavar=("A", "B"))
    examples.add_argument("--verbose", action="store_true")
    return parser


def _setup_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else getattr(logging, settings.LOG_LEVEL, logging.WARNING)
    logging.basicConfig(level=level, format="%(asctime)s - %(name)s - %(levelname)s - %(message)s")


def _load_spec(args: argparse.Namespace) -> ProblemSpec:
    if args.example:
        try:
            return corpus.get(args.example)
        except KeyError as exc:
            raise ValidationError(str(exc.args[0]), module="cli") from exc
    if not args.spec:
        raise ValidationError("give a .toric file or --example NAME", module="cli")
    return parse_spec(Path(args.spec).read_text(encoding="utf-8"))


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
        logger.info("wrote %s", out)
    else:
        sys.stdout.write(text)


def _format(args: argparse.Namespace, spec: Optional[ProblemSpec] = None) -> str:
    return args.format or (spec.output_format if spec else None) or settings.OUTPUT_FORMAT


def _error_panel(exc: ToricKOError) -> None:
    console = Console(stderr=True, highlight=False)
    console.print(Panel(Text(f"{exc.code}: {exc}"), title=f"toric-ko [{exc.module}]", border_style="red"))


def cmd_examples(args: argparse.Namespace) -> int:
    if args.product:
        a, b = (corpus.get(name) for name in args.product)
        _emit(render_spec(corpus.product(a, b)), None)
        return EXIT_OK
    if args.show:
        _emit(render_spec(corpus.get(args.show)), None)
        return EXIT_OK
    for name in corpus.names():
        spec = corpus.get(name)
        sys.stdout.write(f"{name:<16} n={spec.n} m={spec.m}  {spec.description}\n")
    return EXIT_OK


def cmd_validate(args: argparse.Namespace, spec: ProblemSpec) -> int:
    report = run_pipeline(spec, mode=args.mode, trust_sphere=args.trust_sphere or None, max_degree=args.max_degree)
    if _format(args, spec) == "json":
        payload = {"valid": True, "f_vector": list(report.f.f), "h_vector": list(report.h.h)}
        _emit(json.dumps(payload, sort_keys=True) + "\n", args.out)
    else:
        _emit(f"{spec.name}: valid, f = {list(report.f.f)}, h = {list(report.h.h)}\n", args.out)
    return EXIT_OK


def cmd_chart(args: argparse.Namespace) -> int:
    max_filt = args.max_filt if args.max_filt is not None else settings.CHART_MAX_FILTRATION
    exit_code = EXIT_OK
    if args.which in ("s0", "m"):
        max_stem = args.max_stem if args.max_stem is not None else 12
        chart = (ext_s0 if args.which == "s0" else ext_m)(max_stem, max_filt)
        fmt = args.format or "text"
    else:
        spec = _load_spec(args)
        report = run_pipeline(spec, mode=args.mode, trust_sphere=args.trust_sphere or None, max_degree=args.max_degree)
        chart = report.chart
        exit_code = report.exit_code
        fmt = _format(args, spec)
        max_stem = args.max_stem
    if fmt == "svg":
        _emit(render_chart_svg(chart), args.out)
    elif fmt == "json":
        _emit(json.dumps(chart.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n", args.out)
    else:
        _emit(render_chart(chart, "ascii", max_stem=max_stem, max_filt=max_filt), args.out)
    return exit_code


def cmd_report(args: argparse.Namespace, spec: ProblemSpec) -> int:
    report: Report = run_pipeline(spec, mode=args.mode, trust_sphere=args.trust_sphere or None, max_degree=args.max_degree)
    fmt = _format(args, spec)
    if fmt == "json":
        _emit(render_report_json(report), args.out)
    elif fmt == "svg":
        _emit(render_chart_svg(report.chart), args.out)
    else:
        _emit(render_report_text(report, sections=SECTIONS[args.command]), args.out)
    if args.command in ("ko", "report") and not report.collapse_established:
        logger.warning("collapse not established for %s", spec.name)
        return EXIT_COLLAPSE
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    load_env()
    args = build_parser().parse_args(argv)
    _setup_logging(args.verbose)
    try:
        if args.command == "examples":
            return cmd_examples(args)
        if args.command == "chart":
            return cmd_chart(args)
        spec = _load_spec(args)
        if args.command == "validate":
            return cmd_validate(args, spec)
        return cmd_report(args, spec)
    except SpecSyntaxError as exc:
        _error_panel(exc)
        return EXIT_PARSE
    except ValidationError as exc:
        _error_panel(exc)
        return EXIT_VALIDATION
    except CollapseNotEstablishedError as exc:
        _error_panel(exc)
        return EXIT_COLLAPSE
    except ToricKOError as exc:
        _error_panel(exc)
        if args.verbose:
            raise
        return EXIT_INTERNAL
    except ValueError as exc:
        _error_panel(ValidationError(str(exc), module="cli"))
        return EXIT_VALIDATION
    except KeyError as exc:
        Console(stderr=True).print(Text(str(exc.args[0])))
        return EXIT_VALIDATION
    except OSError as exc:
        Console(stderr=True).print(Text(f"cannot read input: {exc}"))
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
