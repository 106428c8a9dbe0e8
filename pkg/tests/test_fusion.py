# -*- coding: utf-8 -*-

from math import exp
from random import Random
import pytest
from hypothesis import given, settings, strategies as st
from lncad.errors import ContractError, ReferentialError
from lncad.geometry import iou
from lncad.fusion import (
    FUSED_MODEL_ID, FusionMethod, FusionParams, RescaleMode, ScoreMode,
    DetectionDataset, fuse_group, fuse_volume, nms, soft_nms, wbf, sort_key,
)
from .factories import det, int_boxes, scores, slice_detections


def test_params_validation():
    with pytest.raises(ContractError):
        FusionParams(iou_cluster_thr=1.)
    with pytest.raises(ContractError):
        FusionParams(nms_iou_thr=0.)
    with pytest.raises(ContractError):
        FusionParams(soft_nms_sigma=0.)
    with pytest.raises(ContractError):
        FusionParams(model_count=0)


def test_detection_validation():
    with pytest.raises(ContractError):
        det([0, 0, 1, 1], 1.5)
    with pytest.raises(ContractError):
        det([0, 0, 1, 1], 0.5, slice_index=-1)


def test_mixed_groups_rejected():
    dets = [det([0, 0, 1, 1], 0.5), det([0, 0, 1, 1], 0.5, slice_index=1)]
    with pytest.raises(ContractError):
        nms(dets, 0.5)
    with pytest.raises(ContractError):
        soft_nms(dets, FusionParams())
    with pytest.raises(ContractError):
        wbf([dets], FusionParams())


class TestNMS:

    def test_single(self):
        d = det([0, 0, 10, 10], 0.7)
        assert nms([d], 0.5) == [d]

    def test_identical_boxes(self):
        a = det([0, 0, 10, 10], 0.9)
        b = det([0, 0, 10, 10], 0.8)
        assert nms([b, a], 0.5) == [a]

    def test_disjoint_boxes(self):
        a = det([0, 0, 10, 10], 0.6)
        b = det([20, 20, 30, 30], 0.8)
        assert nms([a, b], 0.5) == [b, a]

    @settings(max_examples=200)
    @given(slice_detections(("m0", "m1")), st.sampled_from([0.1, 0.3, 0.5, 0.7]))
    def test_greedy_properties(self, dets, thr):
        kept = nms(dets, thr)
        assert kept == sorted(kept, key=sort_key)
        assert all(k in dets for k in kept)
        for i, a in enumerate(kept):
            for b in kept[i + 1:]:
                assert iou(a.box, b.box) <= thr
        # Every dropped box overlaps a kept box ranked before it
        for d in dets:
            if d not in kept:
                assert any(
                    sort_key(k) <= sort_key(d) and iou(k.box, d.box) > thr
                    for k in kept
                )
        assert nms(kept, thr) == kept
        assert nms(list(reversed(dets)), thr) == kept

    def test_matches_exhaustive_selection(self):
        rnd = Random(1000)
        pool = [(x, y, x + w, y + h)
                for x, y, w, h in ((rnd.randrange(12), rnd.randrange(12),
                                    rnd.randrange(3, 10), rnd.randrange(3, 10))
                                   for _ in range(12))]
        for _ in range(1000):
            dets = [det(b, rnd.choice((0.3, 0.5, 0.9)),
                        model_id=rnd.choice(("m0", "m1")))
                    for b in rnd.sample(pool, rnd.randint(0, 6))]
            thr = rnd.choice((0.1, 0.3, 0.5, 0.7))
            remaining = list(dets)
            expected = []
            while remaining:
                best = min(remaining, key=sort_key)
                expected.append(best)
                remaining = [d for d in remaining if iou(d.box, best.box) <= thr]
            assert nms(dets, thr) == expected


class TestSoftNMS:

    def test_single(self):
        d = det([0, 0, 10, 10], 0.7)
        assert soft_nms([d], FusionParams()) == [d]

    def test_identical_box_decay(self):
        a = det([0, 0, 10, 10], 0.9)
        b = det([0, 0, 10, 10], 0.8)
        out = soft_nms([a, b], FusionParams(soft_nms_sigma=0.5))
        assert out[0] == a
        assert out[1].score == pytest.approx(0.8 * exp(-2), abs=1e-12)
        assert out[1].score == pytest.approx(0.10827, abs=1e-5)

    def test_disjoint_unchanged(self):
        a = det([0, 0, 10, 10], 0.9)
        b = det([20, 20, 30, 30], 0.8)
        assert soft_nms([b, a], FusionParams()) == [a, b]

    def test_drop_threshold(self):
        a = det([0, 0, 10, 10], 0.9)
        b = det([0, 0, 10, 10], 0.005)
        assert soft_nms([a, b], FusionParams()) == [a]

    @settings(max_examples=150)
    @given(slice_detections(("m0",), max_size=6))
    def test_small_sigma_converges_to_hard_nms(self, dets):
        # IoU 0 decays nothing, so hard NMS at threshold 0 is the limit
        params = FusionParams(soft_nms_sigma=1e-9)
        hard = nms(dets, 1e-12)
        soft = soft_nms(dets, params)
        assert [(d.box, d.score) for d in soft] == [
            (d.box, d.score) for d in hard]


class TestWBF:

    def test_one_box(self):
        d = det([0, 0, 10, 10], 0.7)
        out = wbf([[d]], FusionParams(model_count=1))
        assert len(out) == 1
        assert out[0].box == d.box
        assert out[0].score == 0.7
        assert out[0].model_id == FUSED_MODEL_ID

    def test_identical_boxes_two_models(self):
        a = det([0, 0, 10, 10], 0.8, model_id="a")
        b = det([0, 0, 10, 10], 0.6, model_id="b")
        out = wbf([[a], [b]], FusionParams(model_count=2))
        assert len(out) == 1
        assert out[0].box.as_list() == pytest.approx([0, 0, 10, 10])
        assert out[0].score == pytest.approx(0.7)

    def test_weighted_mean(self):
        a = det([0, 0, 10, 10], 0.8, model_id="a")
        b = det([0, 0, 10, 12], 0.4, model_id="b")
        out = wbf([[a], [b]], FusionParams(model_count=2))
        assert len(out) == 1
        assert out[0].box.as_list() == pytest.approx([0, 0, 10, 10.6667], abs=1e-4)
        assert out[0].score == pytest.approx(0.6)

    def test_rescale_by_model_count(self):
        a = det([0, 0, 10, 10], 0.8, model_id="a")
        c = det([50, 50, 60, 60], 0.9, model_id="a")
        params = FusionParams(model_count=2)
        out = wbf([[a, c], []], params)
        assert [d.score for d in out] == pytest.approx([0.45, 0.4])
        none = FusionParams(model_count=2, rescale_mode=RescaleMode.NONE)
        assert [d.score for d in wbf([[a, c], []], none)] == pytest.approx([0.9, 0.8])

    def test_max_score_mode(self):
        a = det([0, 0, 10, 10], 0.8, model_id="a")
        b = det([0, 0, 10, 10], 0.4, model_id="b")
        params = FusionParams(model_count=2, score_mode=ScoreMode.MAX)
        assert wbf([[a], [b]], params)[0].score == pytest.approx(0.8)

    def test_zero_scores(self):
        a = det([0, 0, 10, 10], 0., model_id="a")
        b = det([0, 0, 10, 12], 0., model_id="b")
        out = wbf([[a], [b]], FusionParams(model_count=2))
        assert out[0].box.as_list() == pytest.approx([0, 0, 10, 11])
        assert out[0].score == 0.

    def test_empty_and_mismatch(self):
        assert wbf([], FusionParams()) == []
        with pytest.raises(ContractError):
            wbf([[det([0, 0, 1, 1], 0.5)]], FusionParams(model_count=2))

    @settings(max_examples=150)
    @given(slice_detections(("a", "b", "c"), max_size=10), st.randoms())
    def test_permutation_invariance(self, dets, rnd):
        per_model = [[d for d in dets if d.model_id == m] for m in "abc"]
        params = FusionParams(model_count=3)
        base = wbf(per_model, params)
        shuffled = [list(ds) for ds in per_model]
        for ds in shuffled:
            rnd.shuffle(ds)
        order = [0, 1, 2]
        rnd.shuffle(order)
        other = wbf([shuffled[i] for i in order], params)
        assert len(base) == len(other)
        for x, y in zip(base, other):
            assert x.box.as_list() == pytest.approx(y.box.as_list(), abs=1e-9)
            assert x.score == pytest.approx(y.score, abs=1e-9)

    def test_model_and_row_order_do_not_matter(self):
        rnd = Random(2000)
        params = FusionParams(model_count=3)
        for _ in range(1000):
            per_model = [
                [det((x, y, x + rnd.randint(2, 8), y + rnd.randint(2, 8)),
                     rnd.choice((0.2, 0.5, 0.8, 1.)), model_id=m)
                 for x, y in ((rnd.randrange(10), rnd.randrange(10))
                              for _ in range(rnd.randint(0, 4)))]
                for m in "abc"
            ]
            base = wbf(per_model, params)
            shuffled = [rnd.sample(ds, len(ds)) for ds in per_model]
            rnd.shuffle(shuffled)
            assert wbf(shuffled, params) == base

    @settings(max_examples=150)
    @given(slice_detections(("a", "b"), max_size=10))
    def test_cluster_bound_and_envelope(self, dets):
        per_model = [[d for d in dets if d.model_id == m] for m in "ab"]
        out = wbf(per_model, FusionParams(model_count=2))
        assert len(out) <= len(dets)
        if dets:
            lo = [min(d.box.as_list()[i] for d in dets) for i in range(4)]
            hi = [max(d.box.as_list()[i] for d in dets) for i in range(4)]
            for f in out:
                for i, c in enumerate(f.box.as_list()):
                    assert lo[i] - 1e-9 <= c <= hi[i] + 1e-9
            assert all(0 <= f.score <= 1 for f in out)


def _dataset(dets, volumes=None):
    return DetectionDataset(tuple(dets), volumes or {"v0": 4, "v1": 4})


class TestFuseVolume:

    def test_empty(self):
        out = fuse_volume([_dataset([]), _dataset([])], FusionParams(),
                          FusionMethod.WBF)
        assert len(out) == 0
        assert out.volume_index == {"v0": 4, "v1": 4}

    def test_single_group(self):
        dets = [det([0, 0, 10, 10], 0.9), det([1, 1, 11, 11], 0.7),
                det([30, 30, 40, 40], 0.5)]
        for method in FusionMethod:
            direct = fuse_group([dets], FusionParams(), method)
            fused = fuse_volume([_dataset(dets)], FusionParams(), method)
            assert list(fused) == direct

    def test_unknown_volume(self):
        ds = DetectionDataset((det([0, 0, 1, 1], 0.5, volume_id="vx"),), {"vx": 1})
        with pytest.raises(ReferentialError):
            fuse_volume([ds], FusionParams(), FusionMethod.NMS,
                        inventory={"v0": 4})

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.tuples(int_boxes(), scores, st.sampled_from(["v0", "v1"]),
                              st.integers(0, 3), st.sampled_from(["a", "b"])),
                    max_size=25),
           st.sampled_from(list(FusionMethod)))
    def test_grouping_oracle(self, rows, method):
        from lncad.fusion import Detection
        dets = [Detection(b, s, m, v, i) for b, s, v, i, m in rows]
        per_model = [_dataset([d for d in dets if d.model_id == m]) for m in "ab"]
        params = FusionParams(model_count=2)
        fused = fuse_volume(per_model, params, method, workers=3)
        expected = []
        for v in ("v0", "v1"):
            for i in range(4):
                sets = [[d for d in dets if d.model_id == m
                         and (d.volume_id, d.slice_index) == (v, i)] for m in "ab"]
                if any(sets):
                    expected.extend(fuse_group(sets, params, method))
        assert list(fused) == expected
        sequential = fuse_volume(per_model, params, method, workers=1)
        assert fused.records == sequential.records


def test_fuse_volume_counts_inputs_as_models():
    a = _dataset([det([0, 0, 10, 10], 0.8, model_id="a")])
    b = _dataset([])
    out = fuse_volume([a, b], FusionParams(model_count=1), FusionMethod.WBF)
    assert [d.score for d in out] == pytest.approx([0.4])


def test_shuffled_input_gives_same_output():
    rnd = Random(3)
    dets = [det([x, x, x + 10, x + 10], s, model_id=m, slice_index=i)
            for x, s, m, i in [(0, 0.9, "a", 0), (2, 0.9, "b", 0), (4, 0.5, "a", 1),
                               (40, 0.3, "b", 1), (1, 0.7, "a", 0)]]
    base = fuse_volume([_dataset(dets)], FusionParams(), FusionMethod.SOFT_NMS)
    rnd.shuffle(dets)
    assert fuse_volume([_dataset(dets)], FusionParams(),
                       FusionMethod.SOFT_NMS).records == base.records
