"""Command line: render one record to one image.

    l1cv-plots --record results/fig3_7.json --out figures/fig3.png
"""

import argparse
import sys

from .render import RecordMismatchError, render, spec_for_record


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="l1cv-plots", description=__doc__)
    parser.add_argument("--record", required=True, help="experiment record JSON")
    parser.add_argument("--out", required=True, help="output image path (png)")
    parser.add_argument("--bins", type=int, default=None,
                        help="histogram bin count (default: Freedman-Diaconis)")
    parser.add_argument("--dpi", type=int, default=150)
    args = parser.parse_args(argv)
    try:
        spec = spec_for_record(args.record, args.out, bins=args.bins, dpi=args.dpi)
        path = render(spec)
    except RecordMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
