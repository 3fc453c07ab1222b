"""CSV output and gnuplot scripts.

CSV files are UTF-8 with LF line endings, a header row, and floats in
shortest round-trip form (``repr``).
"""

from __future__ import annotations

import csv
import io
import math
from collections.abc import Iterable, Mapping, Sequence
from pathlib import Path

import numpy as np


def format_value(value: object) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if math.isnan(v):
            return "nan"
        return repr(v)
    if isinstance(value, np.integer):
        return str(int(value))
    return "" if value is None else str(value)


def to_csv_text(rows: Iterable[Mapping[str, object]], columns: Sequence[str] | None = None) -> str:
    """Render ``rows`` as CSV text; ``columns`` defaults to the first row's keys."""
    rows = list(rows)
    if columns is None:
        if not rows:
            raise ValueError("Cannot infer CSV columns from zero rows")
        columns = list(rows[0])
    buf = io.StringIO()
    writer = csv.DictWriter(
        buf, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n"
    )
    writer.writeheader()
    for row in rows:
        writer.writerow({k: format_value(row.get(k)) for k in columns})
    return buf.getvalue()


def write_csv(
    rows: Iterable[Mapping[str, object]],
    path: str | Path,
    columns: Sequence[str] | None = None,
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as f:
        f.write(to_csv_text(rows, columns))
    return path


_GNUPLOT_TEMPLATE = """\
# {title}
set datafile separator ","
set key autotitle columnhead
set logscale xy
set format y "10^{{%L}}"
set xlabel "N"
set ylabel "{ylabel}"
set key top right
set title "{title}"
{terminal}
plot \\
{plots}
"""


def write_gnuplot(
    summary_csv: str | Path,
    path: str | Path,
    algorithms: Sequence[str],
    title: str = "Uniform error",
    output: str | None = None,
) -> Path:
    """A gnuplot script plotting mean error with its 2.5/97.5% band per algorithm.

    Expects the summary column order algorithm, N, N_hat, count, failed,
    mean_error, q025_error, q975_error.
    """
    if not algorithms:
        raise ValueError("Need at least one algorithm to plot")
    summary_csv = Path(summary_csv)
    plots = []
    for algo in algorithms:
        select = f'(strcol(1) eq "{algo}" ? ${{col}} : NaN)'
        band = select.format(col=7), select.format(col=8)
        plots.append(
            f'  "{summary_csv.name}" using 2:{band[0]}:{band[1]} '
            f'with filledcurves fs transparent solid 0.2 notitle'
        )
        plots.append(
            f'  "{summary_csv.name}" using 2:{select.format(col=6)} '
            f'with linespoints title "{algo}"'
        )
    terminal = f'set terminal pngcairo size 900,600\nset output "{output}"' if output else ""
    script = _GNUPLOT_TEMPLATE.format(
        title=title,
        ylabel="||f - p_n||_inf",
        terminal=terminal,
        plots=", \\\n".join(plots),
    )
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(script, encoding="utf-8", newline="\n")
    return path
