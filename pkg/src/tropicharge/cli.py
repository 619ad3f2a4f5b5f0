"""Command line entry point.

    tropicharge run <config> [--order N] [--seed S] [--skip-amoeba] [--out PATH]
    tropicharge render <report> <out.svg>

Exit codes: 0 all checks pass, 1 some check failed (the report is still
written), 2 invalid configuration or input.
"""

import argparse
import json
import sys
from pathlib import Path

from .codec import REPORT_SCHEMA, dumps
from .errors import ConfigInvalid, NothingToRender
from .pipeline import load_config, run_job
from .render import render_svg

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2


def load_report(path):
    data = json.loads(Path(path).read_text())
    if data.get("schema") != REPORT_SCHEMA:
        raise ConfigInvalid(f"unsupported report schema {data.get('schema')!r}")
    return data


def cmd_run(args):
    try:
        cfg = load_config(args.config)
        if args.order is not None:
            cfg.truncation_order = args.order
        if args.seed is not None:
            cfg.seed = args.seed
        report, passed = run_job(cfg, skip_amoeba=args.skip_amoeba)
    except ConfigInvalid as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_INVALID
    out = Path(args.out or cfg.outputs.get("report") or f"{cfg.name}.report.json")
    out.write_text(dumps(report))
    svg = args.svg or cfg.outputs.get("svg")
    if svg:
        try:
            render_svg(json.loads(out.read_text()), svg)
        except NothingToRender:
            pass
    failed = [c.name for c in report["verifications"].checks if not c.passed]
    for name in failed:
        print(f"FAILED: {name}", file=sys.stderr)
    print(f"{cfg.name}: {'ok' if passed else 'verification failed'} -> {out}")
    return EXIT_OK if passed else EXIT_FAILED


def cmd_render(args):
    try:
        report = load_report(args.report)
        render_svg(report, args.out)
    except (OSError, json.JSONDecodeError, ConfigInvalid, NothingToRender) as exc:
        print(f"cannot render: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="tropicharge")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run a job config and write its report")
    run.add_argument("config")
    run.add_argument("--order", type=int, help="series truncation order")
    run.add_argument("--seed", type=int, help="seed for random tropical coefficients")
    run.add_argument("--skip-amoeba", action="store_true", help="skip the floating-point amoeba stage")
    run.add_argument("--out", help="report path (overrides the config)")
    run.add_argument("--svg", help="also render an SVG figure to this path")
    run.set_defaults(func=cmd_run)
    render = sub.add_parser("render", help="draw a report as SVG")
    render.add_argument("report")
    render.add_argument("out")
    render.set_defaults(func=cmd_render)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
