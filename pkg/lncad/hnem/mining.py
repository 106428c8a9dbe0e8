# -*- coding: utf-8 -*-

"""Hard negative selection.

A hard negative does not overlap any ground truth box on its slice and
scores above the weakest true positive of its volume.
"""

__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

from typing import Tuple, List, Dict, Sequence
from time import process_time
from dataclasses import dataclass
from lncad.geometry import Box2D, iou
from lncad.fusion.detection import Detection, sort_key
from lncad.fusion.dataset import DetectionDataset, merge_inventories
from lncad.evaluation.annotation import LesionAnnotation
from lncad.evaluation.dataset import AnnotationDataset
from lncad.evaluation.matching import match_detections
from lncad.thread import ordered_map
from lncad.info.logging_handler import logger

TP_IOU_THR = 0.25
FALLBACK_FLOOR = 0.5


@dataclass(frozen=True)
class MiningResult:
    """Selected negatives of a volume."""
    hard_negatives: Tuple[Detection, ...]
    tp_floor: float
    tp_count: int


def select_hard_negatives(
    preds: Sequence[Detection],
    lesions: Sequence[LesionAnnotation],
    iou_thr: float = TP_IOU_THR,
    fallback_floor: float = FALLBACK_FLOOR
) -> MiningResult:
    """Confident predictions with zero overlap against the ground truth."""
    match = match_detections(preds, lesions, iou_thr)
    tp_scores = [m.detection.score for m in match.detections if m.is_tp]
    tp_floor = min(tp_scores) if tp_scores else fallback_floor
    gt: Dict[int, List[Box2D]] = {}
    for lesion in lesions:
        for s, box in lesion.boxes():
            gt.setdefault(s, []).append(box)
    hard = [
        p for p in preds
        if p.score > tp_floor
        and all(iou(p.box, b) == 0 for b in gt.get(p.slice_index, ()))
    ]
    hard.sort(key=sort_key)
    return MiningResult(tuple(hard), tp_floor, len(tp_scores))


def mine_dataset(
    detections: DetectionDataset,
    annotations: AnnotationDataset,
    iou_thr: float = TP_IOU_THR,
    fallback_floor: float = FALLBACK_FLOOR,
    *,
    workers: int = 1
) -> Tuple[DetectionDataset, Dict[str, MiningResult]]:
    """Hard negatives of every volume."""
    t0 = process_time()
    inventory = merge_inventories(
        (detections.volume_index, annotations.volume_index))
    dets = detections.by_volume()
    gt = annotations.by_volume()
    volumes = sorted(inventory)

    def job(vid: str) -> MiningResult:
        return select_hard_negatives(dets.get(vid, []), gt.get(vid, []),
                                     iou_thr, fallback_floor)

    results = dict(zip(volumes, ordered_map(job, volumes, workers)))
    negatives = tuple(d for r in results.values() for d in r.hard_negatives)
    logger.info(f"Mined {len(negatives)} hard negatives from {len(detections)} "
                f"detections: {process_time() - t0:.02f}s")
    return DetectionDataset(negatives, inventory), results
