# -*- coding: utf-8 -*-

"""Detection record and fusion parameters."""

from __future__ import annotations

__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

from typing import Tuple, Sequence
from enum import Enum
from dataclasses import dataclass, replace
from lncad.errors import ContractError
from lncad.geometry import Box2D

DEFAULT_LABEL = "LN"
FUSED_MODEL_ID = "fused"
_SortKey = Tuple[float, str, int, float, float, float, float]


class FusionMethod(Enum):
    """Duplicate reduction methods."""
    NMS = 'nms'
    SOFT_NMS = 'soft-nms'
    WBF = 'wbf'

    @property
    def title(self) -> str:
        """Reformat enum's names."""
        return self.name.replace("_", "-").lower()


class ScoreMode(Enum):
    """Score of a fused cluster."""
    MEAN = 'mean'
    MAX = 'max'


class RescaleMode(Enum):
    """Confidence rescaling of a fused cluster."""
    NONE = 'none'
    COUNT_OVER_MODELS = 'count'


@dataclass(frozen=True)
class Detection:
    """A scored box on one slice of one volume."""
    box: Box2D
    score: float
    model_id: str
    volume_id: str
    slice_index: int
    label: str = DEFAULT_LABEL

    def __post_init__(self) -> None:
        if not 0 <= self.score <= 1:
            raise ContractError(f"score out of [0, 1]: {self.score}")
        if self.slice_index < 0:
            raise ContractError(f"negative slice index: {self.slice_index}")

    @property
    def group(self) -> Tuple[str, int, str]:
        """The (volume, slice, label) address used to group fusion inputs."""
        return self.volume_id, self.slice_index, self.label

    def with_score(self, score: float) -> Detection:
        return replace(self, score=score)


def sort_key(d: Detection) -> _SortKey:
    """Descending score, ties broken by model, slice and coordinates."""
    b = d.box
    return -d.score, d.model_id, d.slice_index, b.x1, b.y1, b.x2, b.y2


def check_group(dets: Sequence[Detection]) -> None:
    """All detections must share one (volume, slice, label) address."""
    groups = {d.group for d in dets}
    if len(groups) > 1:
        raise ContractError(
            f"detections span {len(groups)} (volume, slice, label) groups: "
            f"{sorted(groups)[:3]}"
        )


@dataclass(frozen=True)
class FusionParams:
    """Parameters of NMS, Soft-NMS and WBF."""
    iou_cluster_thr: float = 0.55
    score_mode: ScoreMode = ScoreMode.MEAN
    rescale_mode: RescaleMode = RescaleMode.COUNT_OVER_MODELS
    soft_nms_sigma: float = 0.5
    soft_nms_min_score: float = 1e-3
    nms_iou_thr: float = 0.5
    model_count: int = 1

    def __post_init__(self) -> None:
        for name in ('iou_cluster_thr', 'nms_iou_thr'):
            v = getattr(self, name)
            if not 0 < v < 1:
                raise ContractError(f"{name} must be in (0, 1): {v}")
        if self.soft_nms_sigma <= 0:
            raise ContractError(f"sigma must be positive: {self.soft_nms_sigma}")
        if self.soft_nms_min_score < 0:
            raise ContractError(
                f"negative drop threshold: {self.soft_nms_min_score}")
        if self.model_count < 1:
            raise ContractError(f"model count must be positive: {self.model_count}")
