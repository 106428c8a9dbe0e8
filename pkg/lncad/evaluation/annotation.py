# -*- coding: utf-8 -*-

"""Ground truth lesions and evaluation settings."""

from __future__ import annotations

__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

from typing import Tuple, Optional, Iterator
from enum import Enum
from dataclasses import dataclass, field
from lncad.errors import ContractError
from lncad.geometry import Box2D

FP_TARGETS = (0.5, 1., 2., 4., 6., 8., 16.)


class Interpolation(Enum):
    """Sensitivity lookup between FROC operating points."""
    STEP = 'step'
    LINEAR = 'linear'


class APMode(Enum):
    """Precision-recall integration scheme."""
    POINTS_101 = '101'
    ALL_POINTS = 'all'


class Protocol(Enum):
    """Which ground truth boxes take part in matching."""
    VOLUMETRIC = 'volumetric'
    KEY_SLICE = 'key-slice'


@dataclass(frozen=True)
class LesionAnnotation:
    """A 3D lesion given as per-slice boxes."""
    lesion_id: str
    volume_id: str
    extent: Tuple[Tuple[int, Box2D], ...]
    key_slice: Optional[int] = None

    def __post_init__(self) -> None:
        if not self.extent:
            raise ContractError(f"lesion {self.lesion_id} has empty extent")
        slices = [s for s, _ in self.extent]
        if len(set(slices)) != len(slices):
            raise ContractError(f"lesion {self.lesion_id} repeats a slice")
        if min(slices) < 0:
            raise ContractError(f"lesion {self.lesion_id} has a negative slice")
        if self.key_slice is not None and self.key_slice not in slices:
            raise ContractError(
                f"key slice {self.key_slice} outside lesion {self.lesion_id}")

    @property
    def slices(self) -> Tuple[int, ...]:
        return tuple(sorted(s for s, _ in self.extent))

    @property
    def key_slice_index(self) -> int:
        """Annotated key slice, or the lower median slice of the extent."""
        if self.key_slice is not None:
            return self.key_slice
        slices = self.slices
        return slices[(len(slices) - 1) // 2]

    def boxes(self) -> Iterator[Tuple[int, Box2D]]:
        yield from self.extent

    def key_slice_only(self) -> LesionAnnotation:
        """The 2D view of this lesion used by per-key-slice evaluation."""
        key = self.key_slice_index
        return LesionAnnotation(
            self.lesion_id,
            self.volume_id,
            tuple((s, b) for s, b in self.extent if s == key),
            key,
        )


@dataclass(frozen=True)
class EvalConfig:
    """Evaluation settings."""
    iou_thr: float = 0.25
    fp_targets: Tuple[float, ...] = field(default=FP_TARGETS)
    interpolation: Interpolation = Interpolation.STEP
    ap_mode: APMode = APMode.POINTS_101
    protocol: Protocol = Protocol.VOLUMETRIC

    def __post_init__(self) -> None:
        if not 0 < self.iou_thr <= 1:
            raise ContractError(f"IoU threshold must be in (0, 1]: {self.iou_thr}")
        if not self.fp_targets:
            raise ContractError("no FP targets")
        if any(t <= 0 for t in self.fp_targets):
            raise ContractError(f"FP targets must be positive: {self.fp_targets}")
        if any(a >= b for a, b in zip(self.fp_targets, self.fp_targets[1:])):
            raise ContractError(
                f"FP targets must be strictly increasing: {self.fp_targets}")
