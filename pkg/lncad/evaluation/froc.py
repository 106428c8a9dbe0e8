# -*- coding: utf-8 -*-

"""FROC analysis with false positives counted per volume.

+ Every volume is matched once with all of its detections.
+ Thresholds are swept over the matched detections. Greedy matching of a
  detection only depends on higher scored detections, so the decisions
  for "score >= s" are a prefix of the full matching.
"""

__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

from typing import (
    Tuple, List, Dict, Set, Sequence, Mapping, NamedTuple, Optional,
)
from dataclasses import dataclass, field
from lncad.errors import ContractError, UndefinedMetricError
from lncad.fusion.detection import Detection
from lncad.thread import ordered_map
from lncad.info.logging_handler import logger
from .annotation import (
    LesionAnnotation, EvalConfig, Interpolation, Protocol,
)
from .matching import MatchResult, match_detections

DetsByVolume = Mapping[str, Sequence[Detection]]
GtByVolume = Mapping[str, Sequence[LesionAnnotation]]


class FrocPoint(NamedTuple):
    """One operating point."""
    mean_fp_per_volume: float
    sensitivity: float


@dataclass(frozen=True)
class FrocCurve:
    """Operating points sorted by ascending FP per volume."""
    points: Tuple[FrocPoint, ...]
    thresholds: Tuple[float, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if not self.points:
            raise ContractError("empty FROC curve")
        for a, b in zip(self.points, self.points[1:]):
            if b.mean_fp_per_volume < a.mean_fp_per_volume:
                raise ContractError("FROC points not sorted by FP")
            if b.sensitivity < a.sensitivity:
                raise ContractError("FROC sensitivity decreases")
        if not all(0 <= p.sensitivity <= 1 for p in self.points):
            raise ContractError("sensitivity out of [0, 1]")

    def __len__(self) -> int:
        return len(self.points)

    @property
    def max_fp(self) -> float:
        return self.points[-1].mean_fp_per_volume

    @property
    def final_sensitivity(self) -> float:
        return self.points[-1].sensitivity


def ground_truth_view(
    gt_by_volume: GtByVolume,
    protocol: Protocol
) -> Dict[str, List[LesionAnnotation]]:
    """Lesions taking part in matching under the protocol."""
    if protocol is Protocol.KEY_SLICE:
        return {v: [a.key_slice_only() for a in ls]
                for v, ls in gt_by_volume.items()}
    return {v: list(ls) for v, ls in gt_by_volume.items()}


def match_volumes(
    dets_by_volume: DetsByVolume,
    gt_by_volume: GtByVolume,
    cfg: EvalConfig,
    workers: int = 1
) -> Dict[str, MatchResult]:
    """Match every volume of the ground truth, ordered by volume id."""
    unknown = set(dets_by_volume) - set(gt_by_volume)
    if unknown:
        raise ContractError(
            f"detections on volumes without ground truth: {sorted(unknown)}")
    gt = ground_truth_view(gt_by_volume, cfg.protocol)
    volumes = sorted(gt)

    def job(vid: str) -> MatchResult:
        return match_detections(dets_by_volume.get(vid, ()), gt[vid],
                                cfg.iou_thr, volume_id=vid)

    return dict(zip(volumes, ordered_map(job, volumes, workers)))


def curve_from_matches(matches: Mapping[str, MatchResult]) -> FrocCurve:
    """Sweep every distinct score threshold over matched volumes."""
    n_lesions = sum(len(m.lesions) for m in matches.values())
    if n_lesions == 0:
        raise UndefinedMetricError("sensitivity needs at least one lesion")
    n_volumes = len(matches)
    scored = sorted(
        (
            (-dm.detection.score, vid, dm.is_tp, dm.lesion_id)
            for vid, m in matches.items()
            for dm in m.detections
        ),
        key=lambda item: item[0]
    )
    if not scored:
        return FrocCurve((FrocPoint(0., 0.),))
    points: List[FrocPoint] = []
    thresholds: List[float] = []
    detected: Set[Tuple[str, Optional[str]]] = set()
    fp = 0
    for i, (neg_score, vid, is_tp, lesion_id) in enumerate(scored):
        if is_tp:
            detected.add((vid, lesion_id))
        else:
            fp += 1
        if i + 1 < len(scored) and scored[i + 1][0] == neg_score:
            continue
        points.append(FrocPoint(fp / n_volumes, len(detected) / n_lesions))
        thresholds.append(-neg_score)
    logger.debug(f"FROC: {len(points)} thresholds, "
                 f"{n_lesions} lesions, {n_volumes} volumes")
    return FrocCurve(tuple(points), tuple(thresholds))


def froc(
    dets_by_volume: DetsByVolume,
    gt_by_volume: GtByVolume,
    cfg: EvalConfig,
    *,
    workers: int = 1
) -> FrocCurve:
    """Lesion sensitivity against mean FP per volume."""
    return curve_from_matches(
        match_volumes(dets_by_volume, gt_by_volume, cfg, workers))


def _lookup(curve: FrocCurve, t: float, mode: Interpolation) -> float:
    """Sensitivity at a budget of t FP per volume."""
    if t > curve.max_fp:
        return curve.final_sensitivity
    lower: Optional[FrocPoint] = None
    upper = curve.points[-1]
    for p in curve.points:
        if p.mean_fp_per_volume < t:
            lower = p
        else:
            upper = p
            break
    if upper.mean_fp_per_volume == t:
        return upper.sensitivity
    if lower is None:
        return 0.
    if mode is Interpolation.STEP:
        return lower.sensitivity
    ratio = (t - lower.mean_fp_per_volume) / (
        upper.mean_fp_per_volume - lower.mean_fp_per_volume)
    return lower.sensitivity + (upper.sensitivity - lower.sensitivity) * ratio


def sensitivity_at_fp(curve: FrocCurve, cfg: EvalConfig) -> Dict[float, float]:
    """Sensitivity at each FP target of the config.

    A budget landing exactly on an FP level reports the sensitivity where
    that level is first reached. Budgets beyond the curve report its final
    sensitivity.
    """
    return {t: _lookup(curve, t, cfg.interpolation) for t in cfg.fp_targets}
