"""Figure rendering for the experiment runner's CSV files.

Three figure kinds, keyed by the CSV layout:

- sweep: ``gamma,algo,K,T,iters,mean_regret,stderr`` -> regret vs gamma,
  one line per file
- lifelong: ``episode,mean_lifelong_regret,stderr,n`` -> regret vs
  episode with a mean +- stderr band per file
- mortal: ``t,mean_regret,stderr,n,agent`` -> regret vs step, same bands

Output bytes depend only on the inputs: the backend is pinned to Agg,
PNG metadata is fixed and date fields in vector formats are zeroed via
SOURCE_DATE_EPOCH.
"""

import os
import pathlib
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
os.environ.setdefault("SOURCE_DATE_EPOCH", "0")

import matplotlib.pyplot as plt

SWEEP_COLUMNS = ("gamma", "algo", "K", "T", "iters", "mean_regret", "stderr")
LIFELONG_COLUMNS = ("episode", "mean_lifelong_regret", "stderr", "n")
MORTAL_COLUMNS = ("t", "mean_regret", "stderr", "n", "agent")

KIND_COLUMNS = {
    "sweep": SWEEP_COLUMNS,
    "lifelong": LIFELONG_COLUMNS,
    "mortal": MORTAL_COLUMNS,
}


class PlotError(Exception):
    """Anything wrong with the inputs; the CLI turns it into exit 2."""


class SchemaError(PlotError):
    """Input file does not carry the expected column layout."""


@dataclass(frozen=True)
class FigureSpec:
    """One figure: which kind, which input CSVs, labels, output path."""

    kind: str
    inputs: tuple
    labels: tuple
    out: str

    def __post_init__(self):
        if self.kind not in KIND_COLUMNS:
            raise PlotError(f"unknown figure kind {self.kind!r}")
        if not self.inputs:
            raise PlotError("need at least one input CSV")
        if len(self.labels) != len(self.inputs):
            raise PlotError(f"{len(self.inputs)} inputs but "
                            f"{len(self.labels)} labels")


def read_table(path, columns):
    """Parse one CSV into {column: list}, enforcing the exact header."""
    with open(path, newline="") as fh:
        lines = [ln.rstrip("\n") for ln in fh if ln.strip()]
    if not lines:
        raise SchemaError(f"{path}: empty file, expected columns "
                          + ",".join(columns))
    header = tuple(lines[0].split(","))
    if header != tuple(columns):
        raise SchemaError(f"{path}: columns {','.join(header)} do not match "
                          f"the expected {','.join(columns)}")
    if len(lines) == 1:
        raise SchemaError(f"{path}: no data rows")
    table = {c: [] for c in columns}
    numeric = set(columns) - {"algo", "agent"}
    for ln in lines[1:]:
        cells = ln.split(",")
        if len(cells) != len(columns):
            raise SchemaError(f"{path}: row has {len(cells)} cells, "
                              f"expected {len(columns)}")
        for col, cell in zip(columns, cells):
            if col in numeric:
                try:
                    cell = float(cell)
                except ValueError:
                    raise SchemaError(f"{path}: column {col} has "
                                      f"non-numeric value {cell!r}") from None
            table[col].append(cell)
    return table


def sniff_kind(path):
    """Infer lifelong vs mortal from the header line."""
    with open(path, newline="") as fh:
        header = tuple(fh.readline().rstrip("\n").split(","))
    if header == LIFELONG_COLUMNS:
        return "lifelong"
    if header == MORTAL_COLUMNS:
        return "mortal"
    raise SchemaError(
        f"{path}: columns {','.join(header)} match neither "
        f"{','.join(LIFELONG_COLUMNS)} nor {','.join(MORTAL_COLUMNS)}")


def default_label(path, kind, table):
    if kind == "mortal":
        return table["agent"][0]
    return pathlib.Path(path).stem


def render(spec):
    """Draw the figure and return a summary of what was plotted.

    The summary carries per-series extrema so callers can check the
    figure against the data without decoding the image: sweep series
    report (argmin_x, min_y), curve series report final_y.
    """
    columns = KIND_COLUMNS[spec.kind]
    tables = [read_table(p, columns) for p in spec.inputs]
    fig, ax = plt.subplots(figsize=(6.4, 4.0), dpi=120)
    series = []
    try:
        for path, label, table in zip(spec.inputs, spec.labels, tables):
            label = label or default_label(path, spec.kind, table)
            if spec.kind == "sweep":
                x, y = table["gamma"], table["mean_regret"]
                ax.plot(x, y, marker="o", markersize=3, label=label)
                low = min(range(len(y)), key=y.__getitem__)
                series.append({"label": label, "argmin_x": x[low],
                               "min_y": y[low]})
            else:
                xcol = "episode" if spec.kind == "lifelong" else "t"
                ycol = ("mean_lifelong_regret" if spec.kind == "lifelong"
                        else "mean_regret")
                x, y, se = table[xcol], table[ycol], table["stderr"]
                ax.plot(x, y, label=label)
                ax.fill_between(x, [m - s for m, s in zip(y, se)],
                                [m + s for m, s in zip(y, se)], alpha=0.25)
                series.append({"label": label, "final_y": y[-1]})
        if spec.kind == "sweep":
            ax.set_xlabel("gamma")
            ax.set_ylabel("Bayesian regret")
        else:
            ax.set_xlabel("episode" if spec.kind == "lifelong" else "t")
            ax.set_ylabel("lifelong regret" if spec.kind == "lifelong"
                          else "regret")
        ax.legend()
        fig.tight_layout()
        save_kw = {}
        if spec.out.lower().endswith(".png"):
            save_kw["metadata"] = {"Software": "plotcli"}
        fig.savefig(spec.out, **save_kw)
    finally:
        plt.close(fig)
    return {"kind": spec.kind, "out": spec.out, "series": series}
