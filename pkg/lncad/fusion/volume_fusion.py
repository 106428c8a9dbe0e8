# -*- coding: utf-8 -*-

"""Apply a fusion method to every (volume, slice, label) group."""

__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

from typing import Tuple, List, Dict, Sequence, Mapping, Optional
from time import process_time
from dataclasses import replace
from lncad.thread import ordered_map
from lncad.info.logging_handler import logger
from .detection import Detection, FusionParams, FusionMethod
from .dataset import DetectionDataset, check_detection, merge_inventories
from .nms import nms, soft_nms
from .wbf import wbf

_Group = Tuple[str, int, str]


def fuse_group(
    det_sets: Sequence[Sequence[Detection]],
    params: FusionParams,
    method: FusionMethod
) -> List[Detection]:
    """Fuse one group given as one detection list per model."""
    if method is FusionMethod.WBF:
        return wbf(det_sets, params)
    pool = [d for dets in det_sets for d in dets]
    if method is FusionMethod.NMS:
        return nms(pool, params.nms_iou_thr)
    if method is FusionMethod.SOFT_NMS:
        return soft_nms(pool, params)
    raise ValueError(f"unknown fusion method: {method}")


def fuse_volume(
    per_model: Sequence[DetectionDataset],
    params: FusionParams,
    method: FusionMethod,
    *,
    inventory: Optional[Mapping[str, int]] = None,
    workers: int = 1
) -> DetectionDataset:
    """Fuse the datasets of several models slice by slice.

    Each input dataset counts as one model. Groups never interact.
    """
    t0 = process_time()
    if inventory is None:
        inventory = merge_inventories(ds.volume_index for ds in per_model)
    else:
        inventory = dict(inventory)
    for ds in per_model:
        for d in ds.records:
            check_detection(d, inventory)
    params = replace(params, model_count=max(len(per_model), 1))
    grouped: Dict[_Group, List[List[Detection]]] = {}
    for i, ds in enumerate(per_model):
        for key, dets in ds.groups().items():
            grouped.setdefault(key, [[] for _ in per_model])[i] = dets
    keys = sorted(grouped)

    def job(key: _Group) -> List[Detection]:
        return fuse_group(grouped[key], params, method)

    fused = [d for dets in ordered_map(job, keys, workers) for d in dets]
    logger.info(
        f"{method.title}: {sum(len(ds) for ds in per_model)} -> {len(fused)} "
        f"detections in {len(keys)} slices, {process_time() - t0:.02f}s")
    return DetectionDataset(tuple(fused), inventory).canonical()
