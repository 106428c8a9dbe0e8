# -*- coding: utf-8 -*-

"""Evaluation report of a method."""

from __future__ import annotations

__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

from typing import Mapping, Optional, Dict
from time import process_time
from dataclasses import dataclass, field
from lncad.errors import ContractError
from lncad.info.logging_handler import logger
from .annotation import EvalConfig
from .froc import (
    DetsByVolume, GtByVolume, match_volumes, curve_from_matches,
    sensitivity_at_fp,
)
from .ap import ap_from_matches


def _check_percent(name: str, value: Optional[float]) -> None:
    if value is not None and not 0 <= value <= 100:
        raise ContractError(f"{name} out of [0, 100]: {value}")


@dataclass(frozen=True)
class EvalReport:
    """mAP and sensitivities in percent, at full precision.

    None marks an unavailable value.
    """
    method_name: str
    map: Optional[float]
    sensitivity_at: Mapping[float, Optional[float]] = field(default_factory=dict)
    mean_fp_per_volume: Optional[float] = None
    lesion_count: Optional[int] = None
    volume_count: Optional[int] = None

    def __post_init__(self) -> None:
        _check_percent("mAP", self.map)
        for t, value in self.sensitivity_at.items():
            _check_percent(f"S@{t:g}", value)

    def rounded(self) -> Dict[str, Optional[float]]:
        """Display values, one decimal."""
        values: Dict[str, Optional[float]] = {'mAP': self.map}
        for t, value in self.sensitivity_at.items():
            values[f"S@{t:g}"] = value
        return {k: None if v is None else round(v, 1) for k, v in values.items()}


def evaluate(
    dets_by_volume: DetsByVolume,
    gt_by_volume: GtByVolume,
    cfg: EvalConfig,
    method_name: str,
    *,
    workers: int = 1
) -> EvalReport:
    """FROC sensitivities and mAP of a method in one report."""
    t0 = process_time()
    matches = match_volumes(dets_by_volume, gt_by_volume, cfg, workers)
    curve = curve_from_matches(matches)
    sens = sensitivity_at_fp(curve, cfg)
    ap = ap_from_matches(matches, cfg.ap_mode)
    logger.info(f"Evaluated {method_name}: {process_time() - t0:.02f}s")
    return EvalReport(
        method_name=method_name,
        map=100 * ap,
        sensitivity_at={t: 100 * s for t, s in sens.items()},
        mean_fp_per_volume=curve.max_fp,
        lesion_count=sum(len(m.lesions) for m in matches.values()),
        volume_count=len(matches),
    )
