# -*- coding: utf-8 -*-

"""Synthetic test sets with known metric values.

+ Lesions sit in distinct cells of a fixed grid, one cell per lesion for
  the whole volume, so lesions never overlap.
+ Counts are realized exactly: a profile with hit probability p detects
  round(p * lesions) lesions, and fp_per_volume r emits round(r * volumes)
  false positives over the set.
+ True positives are jittered copies of ground truth boxes, one per slice
  of a detected lesion. False positives lie in lesion-free cells.
"""

from __future__ import annotations

__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

from typing import Tuple, List, Dict, Mapping, Sequence, Any
from os import makedirs
from os.path import join
from json import dumps
from time import process_time
from dataclasses import dataclass, field, asdict
import numpy as np
from yaml import safe_load, YAMLError
from lncad.errors import ContractError, CapacityError, ValidationError
from lncad.geometry import Box2D, iou
from lncad.fusion.detection import Detection
from lncad.fusion.dataset import DetectionDataset
from lncad.evaluation.annotation import LesionAnnotation
from lncad.evaluation.dataset import AnnotationDataset
from lncad.info.logging_handler import logger
from .jsonl import dump_annotations, dump_detections, dump_inventory

CELL = 64
MARGIN = 8
LESION_SIZE = (12., 40.)
FP_SIZE = (8., 32.)
TP_IOU_GUARD = 0.25
_Range = Tuple[int, int]
_Dims = Tuple[int, int, int]
_Rng = np.random.Generator


def _check_range(name: str, lo: float, hi: float, lowest: float = 0.) -> None:
    if not lowest <= lo <= hi:
        raise ContractError(f"invalid {name} range: [{lo}, {hi}]")


@dataclass(frozen=True)
class DetectorProfile:
    """Behavior of one simulated detector."""
    model_id: str
    hit_probability: float
    fp_per_volume: float
    tp_score: Tuple[float, float] = (0.6, 1.)
    fp_score: Tuple[float, float] = (0.05, 0.55)

    def __post_init__(self) -> None:
        if not self.model_id:
            raise ContractError("empty model_id")
        if not 0 <= self.hit_probability <= 1:
            raise ContractError(
                f"hit probability out of [0, 1]: {self.hit_probability}")
        if self.fp_per_volume < 0:
            raise ContractError(f"negative FP rate: {self.fp_per_volume}")
        for name, (lo, hi) in (('tp_score', self.tp_score),
                               ('fp_score', self.fp_score)):
            _check_range(name, lo, hi)
            if hi > 1:
                raise ContractError(f"{name} above 1: {hi}")


@dataclass(frozen=True)
class SynthConfig:
    """Layout of a synthetic test set."""
    n_volumes: int = 122
    lesions_per_volume: _Range = (1, 4)
    slices_per_lesion: _Range = (1, 5)
    image_dims: _Dims = (512, 512, 40)
    profiles: Tuple[DetectorProfile, ...] = field(default_factory=lambda: (
        DetectorProfile('strong', 0.9, 2.),
        DetectorProfile('weak', 0.5, 8.),
    ))
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_volumes < 1:
            raise ContractError(f"need at least one volume: {self.n_volumes}")
        _check_range('lesions_per_volume', *self.lesions_per_volume)
        _check_range('slices_per_lesion', *self.slices_per_lesion, lowest=1)
        if len(self.image_dims) != 3 or min(self.image_dims) < 1:
            raise ContractError(f"invalid image dims: {self.image_dims}")
        if not self.profiles:
            raise ContractError("no detector profiles")
        names = [p.model_id for p in self.profiles]
        if len(set(names)) != len(names):
            raise ContractError(f"duplicate model ids: {names}")
        if not 0 <= self.seed < 2 ** 64:
            raise ContractError(f"seed must be a 64-bit unsigned integer: {self.seed}")

    @property
    def grid(self) -> Tuple[int, int]:
        """Cell columns and rows."""
        nx, ny, _ = self.image_dims
        return nx // CELL, ny // CELL

    def check_capacity(self) -> None:
        cols, rows = self.grid
        need = self.lesions_per_volume[1] + 1
        if cols * rows < need:
            raise CapacityError(
                f"{cols}x{rows} grid of {CELL} px cells cannot hold "
                f"{self.lesions_per_volume[1]} lesions and a free cell")
        if self.slices_per_lesion[1] > self.image_dims[2]:
            raise CapacityError(
                f"lesions of {self.slices_per_lesion[1]} slices do not fit "
                f"into {self.image_dims[2]} slices")


@dataclass(frozen=True)
class ExpectedStats:
    """Realized counts of one detector."""
    n_volumes: int
    lesion_count: int
    gt_box_count: int
    detected_lesions: int
    tp_count: int
    fp_count: int

    @property
    def sensitivity(self) -> float:
        return self.detected_lesions / self.lesion_count if self.lesion_count else 0.

    @property
    def mean_fp_per_volume(self) -> float:
        return self.fp_count / self.n_volumes


@dataclass(frozen=True)
class SynthResult:
    """Generated files in memory."""
    dims: Mapping[str, _Dims]
    annotations: AnnotationDataset
    detections: Mapping[str, DetectionDataset]
    expected: Mapping[str, ExpectedStats]


def _quota(rng: _Rng, total: int, n: int) -> List[int]:
    """Split a total over n bins as evenly as possible, at random."""
    counts = [total // n] * n
    for i in rng.choice(n, total % n, replace=False):
        counts[int(i)] += 1
    return counts


def _round_half_up(x: float) -> int:
    return int(np.floor(x + 0.5))


def _box_in_cell(rng: _Rng, cell: Tuple[int, int], size: Tuple[float, float]) -> Box2D:
    cx, cy = cell
    w, h = (float(v) for v in rng.uniform(*size, 2))
    room = CELL - 2 * MARGIN
    x1 = cx * CELL + MARGIN + float(rng.uniform(0, room - w))
    y1 = cy * CELL + MARGIN + float(rng.uniform(0, room - h))
    return Box2D(round(x1, 2), round(y1, 2), round(x1 + w, 2), round(y1 + h, 2))


def _jitter(rng: _Rng, box: Box2D) -> Box2D:
    """Shifted and scaled copy, the exact copy if the guard fails."""
    dx, dy = (float(v) for v in rng.uniform(-0.1, 0.1, 2))
    dx *= box.width
    dy *= box.height
    s = float(rng.uniform(0.9, 1.1))
    cx = (box.x1 + box.x2) / 2 + dx
    cy = (box.y1 + box.y2) / 2 + dy
    hw = box.width * s / 2
    hh = box.height * s / 2
    try:
        out = Box2D(round(cx - hw, 2), round(cy - hh, 2),
                    round(cx + hw, 2), round(cy + hh, 2))
    except ContractError:
        return box
    return out if iou(out, box) >= TP_IOU_GUARD else box


def _score(rng: _Rng, bounds: Tuple[float, float]) -> float:
    lo, hi = bounds
    return min(max(round(float(rng.uniform(lo, hi)), 4), lo), hi)


def _layout(cfg: SynthConfig, rng: _Rng) -> Tuple[
    Dict[str, _Dims],
    List[LesionAnnotation],
    Dict[str, List[Tuple[int, int]]],
]:
    """Volumes, lesions, and the free cells of every volume."""
    cols, rows = cfg.grid
    cells = [(x, y) for y in range(rows) for x in range(cols)]
    nz = cfg.image_dims[2]
    dims: Dict[str, _Dims] = {}
    lesions: List[LesionAnnotation] = []
    free: Dict[str, List[Tuple[int, int]]] = {}
    for v in range(cfg.n_volumes):
        vid = f"vol{v:03d}"
        dims[vid] = cfg.image_dims
        n = int(rng.integers(cfg.lesions_per_volume[0],
                             cfg.lesions_per_volume[1] + 1))
        order = [cells[int(i)] for i in rng.permutation(len(cells))]
        for k, cell in enumerate(order[:n]):
            length = int(rng.integers(cfg.slices_per_lesion[0],
                                      cfg.slices_per_lesion[1] + 1))
            start = int(rng.integers(0, nz - length + 1))
            extent = tuple((s, _box_in_cell(rng, cell, LESION_SIZE))
                           for s in range(start, start + length))
            lesions.append(LesionAnnotation(f"L{k:02d}", vid, extent))
        free[vid] = sorted(order[n:])
    return dims, lesions, free


def _detector(
    profile: DetectorProfile,
    cfg: SynthConfig,
    rng: _Rng,
    lesions: Sequence[LesionAnnotation],
    free: Mapping[str, Sequence[Tuple[int, int]]],
) -> Tuple[List[Detection], ExpectedStats]:
    records: List[Detection] = []
    n_hit = _round_half_up(profile.hit_probability * len(lesions))
    hits = sorted(int(i) for i in rng.choice(len(lesions), n_hit, replace=False))
    for i in hits:
        a = lesions[i]
        for s, box in a.boxes():
            tp = _jitter(rng, box)
            if iou(tp, box) < TP_IOU_GUARD:
                raise ContractError(f"TP guard failed on lesion {a.lesion_id}")
            records.append(Detection(tp, _score(rng, profile.tp_score),
                                     profile.model_id, a.volume_id, s))
    gt: Dict[Tuple[str, int], List[Box2D]] = {}
    for a in lesions:
        for s, box in a.boxes():
            gt.setdefault((a.volume_id, s), []).append(box)
    volumes = sorted(free)
    fp_total = _round_half_up(profile.fp_per_volume * len(volumes))
    for vid, n in zip(volumes, _quota(rng, fp_total, len(volumes))):
        for _ in range(n):
            s = int(rng.integers(0, cfg.image_dims[2]))
            cell = free[vid][int(rng.integers(0, len(free[vid])))]
            fp = _box_in_cell(rng, cell, FP_SIZE)
            if any(iou(fp, b) > 0 for b in gt.get((vid, s), ())):
                raise ContractError(f"FP guard failed on {vid} slice {s}")
            records.append(Detection(fp, _score(rng, profile.fp_score),
                                     profile.model_id, vid, s))
    tp_count = sum(len(lesions[i].extent) for i in hits)
    stats = ExpectedStats(
        n_volumes=len(volumes),
        lesion_count=len(lesions),
        gt_box_count=sum(len(a.extent) for a in lesions),
        detected_lesions=n_hit,
        tp_count=tp_count,
        fp_count=fp_total,
    )
    return records, stats


def synth_generate(cfg: SynthConfig) -> SynthResult:
    """Generate the annotations and the detections of every profile."""
    cfg.check_capacity()
    t0 = process_time()
    rng = np.random.default_rng(cfg.seed)
    dims, lesions, free = _layout(cfg, rng)
    index = {vid: d[2] for vid, d in dims.items()}
    detections: Dict[str, DetectionDataset] = {}
    expected: Dict[str, ExpectedStats] = {}
    for profile in cfg.profiles:
        records, stats = _detector(profile, cfg, rng, lesions, free)
        detections[profile.model_id] = DetectionDataset(tuple(records), index)
        expected[profile.model_id] = stats
    logger.info(
        f"Synthesized {cfg.n_volumes} volumes, {len(lesions)} lesions, "
        f"{len(cfg.profiles)} detector(s): {process_time() - t0:.02f}s")
    return SynthResult(dims, AnnotationDataset(tuple(lesions), index),
                       detections, expected)


def _pair(data: Mapping[str, Any], key: str, default: Tuple[Any, Any], path: str) -> Tuple[Any, Any]:
    value = data.get(key, default)
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise ValidationError("expected a pair [lo, hi]", path=path, field=key)
    return value[0], value[1]


def synth_config_from(data: Mapping[str, Any], path: str = "") -> SynthConfig:
    """Config from a YAML mapping, missing keys take defaults."""
    default = SynthConfig()
    known = {'n_volumes', 'lesions_per_volume', 'slices_per_lesion',
             'image_dims', 'profiles', 'seed'}
    for key in data:
        if key not in known:
            raise ValidationError("unknown key", path=path, field=str(key))
    profiles = default.profiles
    if 'profiles' in data:
        profiles = tuple(
            DetectorProfile(
                model_id=str(p['model_id']),
                hit_probability=float(p['hit_probability']),
                fp_per_volume=float(p.get('fp_per_volume', 0.)),
                tp_score=_pair(p, 'tp_score', (0.6, 1.), path),
                fp_score=_pair(p, 'fp_score', (0.05, 0.55), path),
            )
            for p in data['profiles']
        )
    dims = data.get('image_dims', default.image_dims)
    return SynthConfig(
        n_volumes=int(data.get('n_volumes', default.n_volumes)),
        lesions_per_volume=_pair(data, 'lesions_per_volume',
                                 default.lesions_per_volume, path),
        slices_per_lesion=_pair(data, 'slices_per_lesion',
                                default.slices_per_lesion, path),
        image_dims=(int(dims[0]), int(dims[1]), int(dims[2])),
        profiles=profiles,
        seed=int(data.get('seed', default.seed)),
    )


def load_synth_config(path: str) -> SynthConfig:
    """Load a YAML config file."""
    with open(path, 'rb') as f:
        raw = f.read()
    try:
        data = safe_load(raw.decode('utf-8'))
    except UnicodeDecodeError as e:
        raise ValidationError(f"invalid UTF-8: {e}", path=path) from e
    except YAMLError as e:
        mark = getattr(e, 'problem_mark', None)
        raise ValidationError(f"invalid YAML: {e}", path=path,
                              line=None if mark is None else mark.line + 1) from e
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ValidationError("config must be a mapping", path=path)
    try:
        return synth_config_from(data, path)
    except (KeyError, TypeError, IndexError) as e:
        raise ValidationError(f"malformed config: {e!r}", path=path) from e
    except ContractError as e:
        raise ValidationError(str(e), path=path) from e


def write_synth(result: SynthResult, directory: str) -> None:
    """Write the inventory, annotations, detections and expected counts."""
    makedirs(directory, exist_ok=True)
    dump_inventory(result.dims, join(directory, "volumes.jsonl"))
    dump_annotations(result.annotations, join(directory, "annotations.jsonl"))
    for model_id, dataset in result.detections.items():
        dump_detections(dataset, join(directory, f"detections_{model_id}.jsonl"))
    expected = {}
    for model_id, stats in result.expected.items():
        expected[model_id] = asdict(stats)
        expected[model_id]['sensitivity'] = stats.sensitivity
        expected[model_id]['mean_fp_per_volume'] = stats.mean_fp_per_volume
    with open(join(directory, "expected.json"), 'w', encoding='utf-8') as f:
        f.write(dumps(expected, indent=2) + '\n')
    logger.info(f"Saved synthetic set to {directory}")
