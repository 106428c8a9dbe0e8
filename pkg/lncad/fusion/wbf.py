# -*- coding: utf-8 -*-

"""Weighted Boxes Fusion.

+ Pool every model's boxes, visit them by descending score.
+ A box joins the first cluster whose fused box overlaps it above the threshold.
+ The fused box is recomputed as soon as a member joins.
"""

__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

from typing import Sequence, List
from lncad.errors import ContractError
from lncad.geometry import Box2D, iou
from .detection import (
    Detection, FusionParams, ScoreMode, RescaleMode, FUSED_MODEL_ID,
    check_group, sort_key,
)


def _fused_box(members: Sequence[Detection]) -> Box2D:
    """Score-weighted mean of the member coordinates."""
    total = sum(d.score for d in members)
    if total > 0:
        weights = [d.score / total for d in members]
    else:
        weights = [1 / len(members)] * len(members)
    coords = [0., 0., 0., 0.]
    for w, d in zip(weights, members):
        for i, c in enumerate(d.box.as_list()):
            coords[i] += w * c
    return Box2D.from_sequence(coords)


def _fused_score(members: Sequence[Detection], params: FusionParams) -> float:
    if params.score_mode is ScoreMode.MAX:
        score = max(d.score for d in members)
    else:
        score = sum(d.score for d in members) / len(members)
    if params.rescale_mode is RescaleMode.COUNT_OVER_MODELS:
        t = params.model_count
        score *= min(len(members), t) / t
    return min(score, 1.)


def wbf(
    det_sets: Sequence[Sequence[Detection]],
    params: FusionParams
) -> List[Detection]:
    """Fuse one group of detections, one list per model."""
    if not det_sets:
        return []
    if params.model_count != len(det_sets):
        raise ContractError(
            f"model count {params.model_count} != {len(det_sets)} detection sets")
    pool = [d for dets in det_sets for d in dets]
    check_group(pool)
    clusters: List[List[Detection]] = []
    boxes: List[Box2D] = []
    for d in sorted(pool, key=sort_key):
        for i, fused in enumerate(boxes):
            if iou(fused, d.box) > params.iou_cluster_thr:
                clusters[i].append(d)
                boxes[i] = _fused_box(clusters[i])
                break
        else:
            clusters.append([d])
            boxes.append(d.box)
    fused_dets = []
    for members, box in zip(clusters, boxes):
        first = members[0]
        fused_dets.append(Detection(
            box=box,
            score=_fused_score(members, params),
            model_id=FUSED_MODEL_ID,
            volume_id=first.volume_id,
            slice_index=first.slice_index,
            label=first.label,
        ))
    fused_dets.sort(key=sort_key)
    return fused_dets
