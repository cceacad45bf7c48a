"""Command-line renderer: fig1 | fig2 | ncycle, reading ctxgeom CSV files."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .io import SchemaError
from .render import render_fig1, render_fig2, render_ncycle


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ctxfig", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, n_inputs):
        p.add_argument(
            "--in",
            dest="inputs",
            action="append",
            required=True,
            help=f"input CSV ({n_inputs} expected)",
        )
        p.add_argument("--out", required=True, help="output image path")
        p.add_argument("--format", choices=("svg", "png"), default="svg")
        p.add_argument("--dpi", type=int, default=150)

    common(sub.add_parser("fig1", help="witness panels vs mixing weight"), 1)
    common(sub.add_parser("fig2", help="sweep panel plus named-state bars"), 2)
    common(sub.add_parser("ncycle", help="scaled bit count vs cycle length"), 1)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    expected = {"fig1": 1, "fig2": 2, "ncycle": 1}[args.command]
    if len(args.inputs) != expected:
        sys.stderr.write(
            f"error: {args.command} takes {expected} --in file(s), "
            f"got {len(args.inputs)}\n"
        )
        return 3
    try:
        if args.command == "fig1":
            out = render_fig1(args.inputs[0], args.out, args.format, args.dpi)
        elif args.command == "fig2":
            out = render_fig2(
                args.inputs[0], args.inputs[1], args.out, args.format, args.dpi
            )
        else:
            out = render_ncycle(args.inputs[0], args.out, args.format, args.dpi)
    except SchemaError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    print(Path(out))
    return 0


if __name__ == "__main__":
    sys.exit(main())
