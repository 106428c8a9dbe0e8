# -*- coding: utf-8 -*-

import pytest
from hypothesis import given, settings, strategies as st
from lncad.errors import ContractError
from lncad.geometry import iou
from lncad.fusion import Detection, DetectionDataset
from lncad.evaluation import AnnotationDataset, LesionAnnotation, match_detections
from lncad.hnem import mine_dataset, select_hard_negatives
from .factories import det, lesion, int_boxes, scores

GT = (0, 0, 10, 10)


def test_three_predictions():
    tp = det(GT, 0.6)
    far = det([50, 50, 60, 60], 0.95)
    # IoU 25 / 175, below the match threshold but overlapping
    touching = det([5, 5, 15, 15], 0.9)
    r = select_hard_negatives([touching, tp, far], [lesion("A", {0: GT})])
    assert r.hard_negatives == (far,)
    assert r.tp_floor == 0.6
    assert r.tp_count == 1


def test_below_floor():
    r = select_hard_negatives([det(GT, 0.6), det([50, 50, 60, 60], 0.4)],
                              [lesion("A", {0: GT})])
    assert r.hard_negatives == ()


def test_fallback_floor():
    preds = [det([50, 50, 60, 60], 0.55), det([70, 70, 80, 80], 0.45)]
    r = select_hard_negatives(preds, [lesion("A", {0: GT})])
    assert r.tp_count == 0
    assert r.tp_floor == 0.5
    assert r.hard_negatives == (preds[0],)
    r = select_hard_negatives(preds, [lesion("A", {0: GT})], fallback_floor=0.4)
    assert r.hard_negatives == tuple(preds)


def test_other_slice_gt_does_not_block():
    # GT box on slice 1 only, the prediction on slice 0 is free
    p = det(GT, 0.9)
    r = select_hard_negatives([p], [lesion("A", {1: GT})])
    assert r.hard_negatives == (p,)


def test_volume_mismatch():
    with pytest.raises(ContractError):
        select_hard_negatives([det(GT, 0.9, volume_id="v1")],
                              [lesion("A", {0: GT}, volume_id="v2")])


_preds = st.lists(st.tuples(int_boxes(), scores, st.integers(0, 2)), max_size=12)
_gt = st.lists(st.tuples(int_boxes(), st.integers(0, 2)), min_size=1, max_size=4)


@settings(max_examples=150)
@given(_preds, _gt, st.randoms())
def test_selection_rule(rows, gt_rows, rnd):
    preds = [Detection(b, s, "m", "v0", i) for b, s, i in rows]
    gt = [LesionAnnotation(f"L{k}", "v0", ((i, b),)) for k, (b, i) in enumerate(gt_rows)]
    r = select_hard_negatives(preds, gt)
    for n in r.hard_negatives:
        assert n.score > r.tp_floor
        assert all(iou(n.box, b) == 0 for a in gt for s, b in a.boxes()
                   if s == n.slice_index)
    shuffled = list(preds)
    rnd.shuffle(shuffled)
    assert select_hard_negatives(shuffled, gt) == r


@settings(max_examples=150)
@given(_preds, st.lists(int_boxes(), min_size=3, max_size=3),
       st.sampled_from([0.1, 0.25, 0.4]), st.sampled_from([0.5, 0.7, 0.9]))
def test_raising_iou_threshold(rows, gt_boxes, lo, hi):
    # One ground truth box per slice
    preds = [Detection(b, s, "m", "v0", i) for b, s, i in rows]
    gt = [LesionAnnotation(f"L{i}", "v0", ((i, b),)) for i, b in enumerate(gt_boxes)]
    detected = {}
    for thr in (lo, hi):
        match = match_detections(preds, gt, thr)
        detected[thr] = {k for k, m in match.lesions.items() if m.detected}
    assert detected[hi] <= detected[lo]
    low = select_hard_negatives(preds, gt, lo)
    high = select_hard_negatives(preds, gt, hi)
    assert low.tp_count == len(detected[lo])
    assert high.tp_count == len(detected[hi])
    assert high.tp_count <= low.tp_count
    for r in (low, high):
        assert set(r.hard_negatives) == {
            p for p in preds
            if p.score > r.tp_floor and iou(p.box, gt_boxes[p.slice_index]) == 0
        }


def test_threshold_moves_the_match():
    # IoU 0.4 at 0.9 wins below 0.4, the exact box at 0.8 wins above it
    partial = det([0, 0, 10, 4], 0.9)
    exact = det(GT, 0.8)
    far = det([50, 50, 60, 60], 0.85)
    gt = [lesion("A", {0: GT})]
    low = select_hard_negatives([partial, exact, far], gt, 0.25)
    assert (low.tp_floor, low.tp_count, low.hard_negatives) == (0.9, 1, ())
    high = select_hard_negatives([partial, exact, far], gt, 0.5)
    assert (high.tp_floor, high.tp_count, high.hard_negatives) == (0.8, 1, (far,))


def test_mine_dataset():
    index = {"v0": 2, "v1": 2}
    dets = DetectionDataset((
        det(GT, 0.6),
        det([50, 50, 60, 60], 0.95),
        det([50, 50, 60, 60], 0.7, volume_id="v1"),
        det([50, 50, 60, 60], 0.3, volume_id="v1", slice_index=1),
    ), index)
    gt = AnnotationDataset((lesion("A", {0: GT}),), index)
    negatives, results = mine_dataset(dets, gt, workers=2)
    assert [(d.volume_id, d.score) for d in negatives.records] == [("v0", 0.95), ("v1", 0.7)]
    assert results["v0"].tp_floor == 0.6
    assert results["v1"].tp_floor == 0.5
    assert results["v1"].tp_count == 0
