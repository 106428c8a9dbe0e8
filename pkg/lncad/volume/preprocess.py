# -*- coding: utf-8 -*-

"""Intensity normalization and 3-slice windows.

Volumes are assumed bias-field corrected already.
"""

__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

from typing import List
from numpy import percentile, clip, zeros_like, stack, arange
from lncad.errors import ContractError
from .volume import Volume, SliceWindow


def percentile_normalize(v: Volume, lo_pct: float = 1., hi_pct: float = 99.) -> Volume:
    """Clip to the [lo, hi] percentiles, then map onto [0, 1].

    Percentiles interpolate linearly between order statistics at rank
    pct / 100 * (n - 1).
    """
    if not 0 <= lo_pct < hi_pct <= 100:
        raise ContractError(f"invalid percentiles: {lo_pct}, {hi_pct}")
    if v.voxels.size == 0:
        raise ContractError("empty volume")
    p_lo, p_hi = percentile(v.voxels, [lo_pct, hi_pct])
    if p_hi == p_lo:
        out = zeros_like(v.voxels)
    else:
        out = (clip(v.voxels, p_lo, p_hi) - p_lo) / (p_hi - p_lo)
        # Guard the rounding of the affine map
        out = clip(out, 0., 1.)
    return Volume(v.dims, out, (float(out.min()), float(out.max())))


def make_slice_windows(v: Volume) -> List[SliceWindow]:
    """One window per slice, edge slices replicated."""
    nz = v.nz
    if nz < 1:
        raise ContractError("volume has no slices")
    windows = []
    for i in range(nz):
        idx = clip(arange(i - 1, i + 2), 0, nz - 1)
        windows.append(SliceWindow(i, stack([v.voxels[j] for j in idx])))
    return windows
