# -*- coding: utf-8 -*-

"""Greedy IoU matching of detections against lesion boxes of one volume."""

__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

from typing import Tuple, List, Dict, Set, Sequence, Mapping, Optional
from dataclasses import dataclass
from lncad.errors import ContractError
from lncad.geometry import Box2D, iou
from lncad.fusion.detection import Detection, sort_key
from .annotation import LesionAnnotation


@dataclass(frozen=True)
class DetectionMatch:
    """Decision for one detection."""
    detection: Detection
    is_tp: bool
    lesion_id: Optional[str] = None


@dataclass(frozen=True)
class LesionMatch:
    """Decision for one lesion."""
    detected: bool
    best_score: Optional[float] = None


@dataclass(frozen=True)
class MatchResult:
    """TP/FP flags of a volume, in matching order (descending score)."""
    volume_id: str
    detections: Tuple[DetectionMatch, ...]
    lesions: Mapping[str, LesionMatch]
    gt_box_count: int = 0

    @property
    def tp_count(self) -> int:
        return sum(m.is_tp for m in self.detections)

    @property
    def fp_count(self) -> int:
        return len(self.detections) - self.tp_count

    @property
    def detected_count(self) -> int:
        return sum(m.detected for m in self.lesions.values())


def _shared_volume(
    dets: Sequence[Detection],
    lesions: Sequence[LesionAnnotation],
    volume_id: Optional[str]
) -> str:
    ids = {d.volume_id for d in dets} | {a.volume_id for a in lesions}
    if volume_id is not None:
        ids.add(volume_id)
    if len(ids) > 1:
        raise ContractError(f"inputs span several volumes: {sorted(ids)}")
    return ids.pop() if ids else ""


def match_detections(
    dets: Sequence[Detection],
    lesions: Sequence[LesionAnnotation],
    iou_thr: float,
    *,
    volume_id: Optional[str] = None
) -> MatchResult:
    """Match by descending score to the best unmatched box on the same slice.

    A detection matching any slice of a lesion makes that lesion detected.
    """
    vid = _shared_volume(dets, lesions, volume_id)
    gt: Dict[int, List[Tuple[str, Box2D]]] = {}
    for lesion in lesions:
        for s, box in lesion.boxes():
            gt.setdefault(s, []).append((lesion.lesion_id, box))
    taken: Set[Tuple[str, int]] = set()
    best: Dict[str, float] = {}
    decisions = []
    for d in sorted(dets, key=sort_key):
        candidates = []
        for lesion_id, box in gt.get(d.slice_index, ()):
            if (lesion_id, d.slice_index) in taken:
                continue
            overlap = iou(d.box, box)
            if overlap >= iou_thr:
                candidates.append(
                    (-overlap, box.x1, box.y1, box.x2, box.y2, lesion_id))
        if not candidates:
            decisions.append(DetectionMatch(d, False))
            continue
        lesion_id = min(candidates)[-1]
        taken.add((lesion_id, d.slice_index))
        best.setdefault(lesion_id, d.score)
        decisions.append(DetectionMatch(d, True, lesion_id))
    return MatchResult(
        vid,
        tuple(decisions),
        {
            a.lesion_id: LesionMatch(a.lesion_id in best, best.get(a.lesion_id))
            for a in sorted(lesions, key=lambda a: a.lesion_id)
        },
        sum(len(a.extent) for a in lesions),
    )
