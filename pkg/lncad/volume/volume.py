# -*- coding: utf-8 -*-

"""Volume container, slice-major voxels."""

from __future__ import annotations

__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

from typing import Tuple, Optional
from dataclasses import dataclass
from numpy import ndarray, asarray, isfinite, float64
from lncad.errors import ContractError

XY_BOUNDS = (64, 4096)
Z_BOUNDS = (1, 2048)


@dataclass(frozen=True, eq=False)
class Volume:
    """Voxels of shape (nz, ny, nx)."""
    dims: Tuple[int, int, int]
    voxels: ndarray
    value_range: Optional[Tuple[float, float]] = None

    def __post_init__(self) -> None:
        if len(self.dims) != 3 or min(self.dims) < 1:
            raise ContractError(f"invalid dims: {self.dims}")
        nx, ny, nz = (int(n) for n in self.dims)
        object.__setattr__(self, 'dims', (nx, ny, nz))
        voxels = asarray(self.voxels, dtype=float64)
        if voxels.size != nx * ny * nz:
            raise ContractError(
                f"{voxels.size} voxels for dims {self.dims}")
        voxels = voxels.reshape(nz, ny, nx)
        if not isfinite(voxels).all():
            raise ContractError("non-finite voxel values")
        object.__setattr__(self, 'voxels', voxels)

    @classmethod
    def from_array(cls, voxels: ndarray) -> Volume:
        """Build from an array of shape (nz, ny, nx)."""
        nz, ny, nx = voxels.shape
        return cls((nx, ny, nz), voxels)

    @property
    def nz(self) -> int:
        return self.dims[2]

    def slice(self, i: int) -> ndarray:
        return self.voxels[i]

    def check_bounds(self) -> None:
        """Dimension sanity check of ingested volumes."""
        nx, ny, nz = self.dims
        lo, hi = XY_BOUNDS
        if not (lo <= nx <= hi and lo <= ny <= hi):
            raise ContractError(
                f"in-plane size {nx}x{ny} outside [{lo}, {hi}]")
        lo, hi = Z_BOUNDS
        if not lo <= nz <= hi:
            raise ContractError(f"slice count {nz} outside [{lo}, {hi}]")


@dataclass(frozen=True, eq=False)
class SliceWindow:
    """Previous, center and next slice stacked as channels."""
    center_index: int
    channels: ndarray

    def __post_init__(self) -> None:
        if self.center_index < 0:
            raise ContractError(f"negative center index: {self.center_index}")
        channels = asarray(self.channels, dtype=float64)
        if channels.ndim != 3 or channels.shape[0] != 3:
            raise ContractError(
                f"window needs shape (3, ny, nx), got {channels.shape}")
        object.__setattr__(self, 'channels', channels)

    @property
    def center(self) -> ndarray:
        return self.channels[1]
