# -*- coding: utf-8 -*-

"""Box-level average precision.

Single class, so mAP equals AP. Recall counts per-slice ground truth boxes.
"""

__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

from typing import Mapping
from numpy import (
    array, cumsum, linspace, searchsorted, zeros, concatenate, maximum,
    where, float64,
)
from lncad.errors import UndefinedMetricError
from .annotation import EvalConfig, APMode
from .matching import MatchResult
from .froc import DetsByVolume, GtByVolume, match_volumes

_RECALL_STEPS = linspace(0., 1., 101, endpoint=True)


def ap_from_matches(matches: Mapping[str, MatchResult], mode: APMode) -> float:
    """Area under the interpolated precision-recall curve."""
    n_gt = sum(m.gt_box_count for m in matches.values())
    if n_gt == 0:
        raise UndefinedMetricError("average precision needs a ground truth box")
    flags = [
        dm.is_tp
        for _, dm in sorted(
            (
                (-dm.detection.score, dm)
                for m in matches.values()
                for dm in m.detections
            ),
            key=lambda item: item[0]
        )
    ]
    if not flags:
        return 0.
    tp_flags = array(flags, dtype=float64)
    tp = cumsum(tp_flags)
    fp = cumsum(1 - tp_flags)
    recall = tp / n_gt
    precision = tp / (tp + fp)
    if mode is APMode.ALL_POINTS:
        mrec = concatenate(([0.], recall, [1.]))
        mpre = concatenate(([0.], precision, [0.]))
        mpre = maximum.accumulate(mpre[::-1])[::-1]
        i = where(mrec[1:] != mrec[:-1])[0]
        return float(((mrec[i + 1] - mrec[i]) * mpre[i + 1]).sum())
    # Precision envelope: best precision at any recall at least as high
    precision = maximum.accumulate(precision[::-1])[::-1]
    inds = searchsorted(recall, _RECALL_STEPS, side='left')
    q = zeros(len(_RECALL_STEPS))
    valid = inds < len(recall)
    q[valid] = precision[inds[valid]]
    return float(q.mean())


def average_precision(
    dets_by_volume: DetsByVolume,
    gt_by_volume: GtByVolume,
    cfg: EvalConfig,
    *,
    workers: int = 1
) -> float:
    """Average precision over all volumes, as a ratio."""
    return ap_from_matches(
        match_volumes(dets_by_volume, gt_by_volume, cfg, workers), cfg.ap_mode)
