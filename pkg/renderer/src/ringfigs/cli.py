"""render <figure-kind> <csv...> -o <png>"""

from __future__ import annotations

import argparse
import sys

from .csvio import SchemaMismatch, UnitMismatch
from .figures import KINDS, FigureSpec, render


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="render", description="render fluxring CSV artifacts into figures"
    )
    ap.add_argument("kind", choices=KINDS)
    ap.add_argument("csv", nargs="+", help="input artifact(s)")
    ap.add_argument("-o", "--out", required=True, help="output image path")
    ap.add_argument("--title", default=None)
    args = ap.parse_args(argv)
    try:
        out = render(
            FigureSpec(kind=args.kind, inputs=tuple(args.csv), output=args.out,
                       title=args.title)
        )
    except (SchemaMismatch, UnitMismatch, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
