"""
CSV and SVG output for observable series.

Both writers are deterministic: the same series always produces the same bytes.
"""

from pathlib import Path
from typing import List

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .errors import IoError  # noqa: E402
from .pipeline import ObservableSeries  # noqa: E402

X_LABEL = "scaled time variable T (deg)"

Y_LABELS = {
    "pghz": r"$P_{GHZ}$",
    "inversion": "population inversion I",
    "negativity": "negativity N",
    "linear_entropy": r"linear entropy $S_l$",
    "leakage": "leakage probability",
}

SVG_RC = {
    "svg.hashsalt": "ioncavity",
    "svg.fonttype": "none",
}


def _y_label(column: str) -> str:
    for prefix, label in Y_LABELS.items():
        if column == prefix:
            return label
        if column.startswith(prefix + "_"):
            return f"{label} ({column[len(prefix) + 1:]})"
    return column


def _prepare(path) -> Path:
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IoError(f"Cannot create directory '{target.parent}': {exc.strerror or exc}") from exc
    return target


def emit_csv(series: ObservableSeries, path) -> Path:
    """
    Write the series in long format: one row per (kappa, T) pair.

    Header `T_deg,kappa,<columns...>`; values with 12 significant digits;
    UNIX newlines.

    Raises:
        IoError: If the file cannot be written
    """
    target = _prepare(path)
    n_t = len(series.t_deg)
    blocks = []
    for i, kappa in enumerate(series.kappas):
        block = [series.t_deg, np.full(n_t, kappa)]
        block.extend(series.values[name][i] for name in series.columns)
        blocks.append(np.column_stack(block))
    table = np.vstack(blocks)
    header = ",".join(["T_deg", "kappa"] + series.columns)
    try:
        with open(target, "w", encoding="utf-8", newline="\n") as fh:
            np.savetxt(fh, table, fmt="%.12g", delimiter=",", header=header, comments="", newline="\n")
    except OSError as exc:
        raise IoError(f"Cannot write '{target}': {exc.strerror or exc}") from exc
    return target


def emit_svg(series: ObservableSeries, path) -> Path:
    """
    Write one panel per column with one line per kappa.

    Each line carries the SVG id `series-<column>-kappa-<kappa>`.

    Raises:
        IoError: If the file cannot be written
    """
    target = _prepare(path)
    columns = series.columns
    with plt.rc_context(SVG_RC):
        fig, axes = plt.subplots(len(columns), 1, figsize=(6.4, 3.2 * len(columns)), squeeze=False)
        try:
            for ax, name in zip(axes[:, 0], columns):
                for i, kappa in enumerate(series.kappas):
                    (line,) = ax.plot(series.t_deg, series.values[name][i], label=f"κ = {kappa:g}")
                    line.set_gid(f"series-{name}-kappa-{kappa:g}")
                ax.set_xlabel(X_LABEL)
                ax.set_ylabel(_y_label(name))
                if len(series.t_deg) > 1:
                    ax.set_xlim(series.t_deg[0], series.t_deg[-1])
                ax.legend(loc="best", fontsize="small")
            if series.title:
                fig.suptitle(series.title)
            fig.tight_layout()
            fig.savefig(target, format="svg", metadata={"Date": None})
        except OSError as exc:
            raise IoError(f"Cannot write '{target}': {exc.strerror or exc}") from exc
        finally:
            plt.close(fig)
    return target


def emit(series: ObservableSeries, out_dir, stem: str, fmt: str = "both") -> List[Path]:
    """Write `<stem>.csv` and/or `<stem>.svg` into out_dir."""
    written = []
    if fmt in ("csv", "both"):
        written.append(emit_csv(series, Path(out_dir) / f"{stem}.csv"))
    if fmt in ("svg", "both"):
        written.append(emit_svg(series, Path(out_dir) / f"{stem}.svg"))
    return written


def emit_table(path, header: List[str], columns) -> Path:
    """Write equal-length columns as CSV with the same formatting as emit_csv."""
    target = _prepare(path)
    table = np.column_stack([np.asarray(column, dtype=float) for column in columns])
    try:
        with open(target, "w", encoding="utf-8", newline="\n") as fh:
            np.savetxt(fh, table, fmt="%.12g", delimiter=",", header=",".join(header), comments="", newline="\n")
    except OSError as exc:
        raise IoError(f"Cannot write '{target}': {exc.strerror or exc}") from exc
    return target
