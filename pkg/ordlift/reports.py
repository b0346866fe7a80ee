"""
Report output
CSV reports with a '# key=value' header and deterministic SVG plots
"""
import csv
import io
import logging
from pathlib import Path
from typing import Dict, Optional, Sequence, Tuple, Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import mpmath  # noqa: E402
import numpy as np  # noqa: E402

from . import __version__  # noqa: E402
from .errors import InputError  # noqa: E402
from .models import Report, RunConfig  # noqa: E402

logger = logging.getLogger(__name__)

Series = Sequence[Tuple[float, float]]


def build_header(config: RunConfig) -> Dict[str, str]:
    header = config.header()
    header.update({
        "ordlift_version": __version__,
        "mpmath_version": mpmath.__version__,
        "numpy_version": np.__version__,
    })
    return header


def render_csv(report: Report) -> str:
    """Header comment lines sorted by key, one block per section, then the verdict row."""
    buffer = io.StringIO()
    for key in sorted(report.header):
        buffer.write(f"# {key}={report.header[key]}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    for section in report.sections:
        writer.writerow(["section", section.name])
        if section.columns:
            writer.writerow(section.columns)
        writer.writerows(section.rows)
        for violation in section.violations:
            writer.writerow(["violation", violation.check, violation.sample, violation.detail])
    writer.writerow(["verdict", report.verdict])
    return buffer.getvalue()


def write_report(report: Report, out: str) -> str:
    """Write the CSV to a path or return it for standard output when out is '-'."""
    text = render_csv(report)
    if out != "-":
        try:
            Path(out).write_text(text, encoding="utf-8")
        except OSError as error:
            raise InputError(f"cannot write {out}: {error}")
        logger.info("Report written to %s", out)
    return text


def emit_plot(series: Series, path: Union[str, Path], title: str = "", xlabel: str = "", ylabel: str = "",
              scatter: bool = False, reference: Optional[float] = None) -> Path:
    """
    Write a deterministic SVG plot of the series.

    Raises:
        InputError: if the series is empty or the file cannot be written
    """
    if not series:
        raise InputError("cannot plot an empty series")
    path = Path(path)
    xs = [float(x) for x, _ in series]
    ys = [float(y) for _, y in series]
    with plt.rc_context({"svg.hashsalt": "ordlift", "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(6, 4))
        if scatter or len(series) == 1:
            ax.scatter(xs, ys, s=12)
        else:
            ax.plot(xs, ys, marker="o", markersize=3)
        if reference is not None:
            ax.axhline(reference, linestyle="--", linewidth=0.8)
        ax.set_title(title)
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        try:
            fig.savefig(path, format="svg", metadata={"Date": None})
        except OSError as error:
            raise InputError(f"cannot write {path}: {error}")
        finally:
            plt.close(fig)
    return path
