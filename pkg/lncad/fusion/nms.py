# -*- coding: utf-8 -*-

"""Greedy and Gaussian Soft non-maximum suppression."""

__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

from typing import Sequence, List
from math import exp
from lncad.geometry import iou
from .detection import Detection, FusionParams, check_group, sort_key


def nms(dets: Sequence[Detection], iou_thr: float) -> List[Detection]:
    """Keep the best box, drop everything overlapping it above the threshold.

    Output is a subset of the input in descending score order.
    """
    check_group(dets)
    kept: List[Detection] = []
    for d in sorted(dets, key=sort_key):
        if all(iou(d.box, k.box) <= iou_thr for k in kept):
            kept.append(d)
    return kept


def soft_nms(dets: Sequence[Detection], params: FusionParams) -> List[Detection]:
    """Gaussian Soft-NMS.

    Each remaining box is decayed by exp(-iou^2 / sigma) against every kept box.
    Boxes decayed under the drop threshold are removed.
    """
    check_group(dets)
    pool = list(dets)
    kept: List[Detection] = []
    while pool:
        best = min(pool, key=sort_key)
        pool.remove(best)
        kept.append(best)
        decayed = []
        for d in pool:
            overlap = iou(best.box, d.box)
            if overlap > 0:
                d = d.with_score(
                    d.score * exp(-overlap * overlap / params.soft_nms_sigma))
            if d.score >= params.soft_nms_min_score:
                decayed.append(d)
        pool = decayed
    return kept
