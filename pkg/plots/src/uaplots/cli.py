"""Command-line renderer: ``uaplots render --csv file --kind kind --out image``.

Exit codes: 0 success, 2 schema/input error (message names the missing
column).
"""

from __future__ import annotations

import argparse
import sys

from .render import load_style, render
from .schema import PANEL_KINDS, PanelSpec, SchemaError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uaplots", description="Render experiment CSVs into figures."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("render", help="render one panel")
    p.add_argument("--csv", required=True, help="input CSV file")
    p.add_argument("--kind", required=True, choices=PANEL_KINDS)
    p.add_argument("--out", required=True, help="output image path (.png, .svg, .pdf)")
    p.add_argument("--style", help="optional JSON file with style overrides")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        style = load_style(args.style)
        path = render(
            PanelSpec(csv_path=args.csv, panel_kind=args.kind, output_image_path=args.out),
            style,
        )
    except (SchemaError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
