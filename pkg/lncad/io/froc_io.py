# -*- coding: utf-8 -*-

"""FROC curve files and plots."""

__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

from typing import Mapping, Sequence, Optional
import matplotlib
matplotlib.use('Agg')
from matplotlib.figure import Figure
from lncad.errors import ValidationError, ContractError
from lncad.evaluation.froc import FrocCurve, FrocPoint
from lncad.info.logging_handler import logger

HEADER = "mean_fp_per_volume,sensitivity"


def froc_dump(curve: FrocCurve, path: str) -> None:
    """Two-column CSV at full precision."""
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(HEADER + "\n")
        for p in curve.points:
            f.write(f"{p.mean_fp_per_volume!r},{p.sensitivity!r}\n")


def read_froc(path: str) -> FrocCurve:
    """Parse a dumped curve."""
    points = []
    with open(path, 'rb') as f:
        for n, raw in enumerate(f, 1):
            try:
                line = raw.decode('utf-8').strip()
            except UnicodeDecodeError as e:
                raise ValidationError(f"invalid UTF-8: {e}",
                                      path=path, line=n) from e
            if n == 1:
                if line != HEADER:
                    raise ValidationError(f"expected header {HEADER!r}",
                                          path=path, line=n)
                continue
            if not line:
                continue
            try:
                fp, s = (float(c) for c in line.split(','))
            except ValueError as e:
                raise ValidationError(f"expected two numbers: {line!r}",
                                      path=path, line=n) from e
            points.append(FrocPoint(fp, s))
    try:
        return FrocCurve(tuple(points))
    except ContractError as e:
        raise ValidationError(str(e), path=path) from e


def plot_froc(
    curves: Mapping[str, FrocCurve],
    path: str,
    fp_targets: Optional[Sequence[float]] = None
) -> None:
    """Draw curves into an image file, FP axis in log scale."""
    figure = Figure(figsize=(6.4, 4.8))
    ax = figure.add_subplot(1, 1, 1)
    for name, curve in curves.items():
        fp = [p.mean_fp_per_volume for p in curve.points]
        s = [100 * p.sensitivity for p in curve.points]
        ax.step(fp, s, where='post', label=name)
    if fp_targets:
        for t in fp_targets:
            ax.axvline(t, color='grey', linestyle=':', linewidth=0.8)
    ax.set_xscale('symlog', linthresh=0.5)
    ax.set_xlabel("Mean FP per volume")
    ax.set_ylabel("Sensitivity (%)")
    ax.set_ylim(0, 100)
    ax.grid(True, alpha=0.3)
    ax.legend()
    figure.tight_layout(pad=0.5)
    figure.savefig(path)
    logger.info(f"Saved FROC plot to {path}")
