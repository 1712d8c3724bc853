"""Command line front end: `plot sweep|curves --in ... --out fig.png`."""

import argparse
import sys

from .figures import FigureSpec, PlotError, render, sniff_kind


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="plot", description="Render experiment CSVs as figures.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, blurb in (("sweep", "regret vs gamma, one line per CSV"),
                        ("curves", "regret curves with stderr bands")):
        p = sub.add_parser(name, help=blurb)
        p.add_argument("--in", dest="inputs", required=True,
                       help="comma-separated input CSV paths")
        p.add_argument("--labels", default=None,
                       help="comma-separated legend labels, one per input")
        p.add_argument("--out", required=True, help="output image path")
    return parser


def _make_spec(args):
    inputs = tuple(p.strip() for p in args.inputs.split(",") if p.strip())
    if not inputs:
        raise PlotError("no input files given")
    if args.labels is None:
        labels = (None,) * len(inputs)
    else:
        labels = tuple(s.strip() for s in args.labels.split(","))
    if args.command == "sweep":
        kind = "sweep"
    else:
        kinds = {path: sniff_kind(path) for path in inputs}
        kind = kinds[inputs[0]]
        for path, k in kinds.items():
            if k != kind:
                raise PlotError(f"{path}: {k} layout mixed with {kind} "
                                "inputs; one figure takes one kind")
    return FigureSpec(kind=kind, inputs=inputs, labels=labels, out=args.out)


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        summary = render(_make_spec(args))
    except (PlotError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    plotted = ", ".join(s["label"] for s in summary["series"])
    print(f"wrote {summary['out']} ({summary['kind']}: {plotted})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
