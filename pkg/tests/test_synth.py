# -*- coding: utf-8 -*-

from json import load
from os.path import join
import pytest
from lncad.errors import CapacityError, ContractError, ValidationError
from lncad.geometry import iou
from lncad.evaluation import EvalConfig, evaluate
from lncad.io import (
    DetectorProfile, SynthConfig, format_annotations, format_detections,
    load_synth_config, parse_annotations, parse_detections, parse_inventory,
    read_volume_dims, synth_config_from, synth_generate, write_synth,
)


def _small(*profiles: DetectorProfile, seed: int = 0, n_volumes: int = 20) -> SynthConfig:
    return SynthConfig(n_volumes=n_volumes, image_dims=(256, 256, 10),
                       profiles=profiles, seed=seed)


def _texts(cfg: SynthConfig):
    result = synth_generate(cfg)
    return [format_annotations(result.annotations)] + [
        format_detections(ds) for ds in result.detections.values()]


def test_same_seed_same_files():
    cfg = _small(DetectorProfile('a', 0.7, 3.), seed=5)
    assert _texts(cfg) == _texts(cfg)


def test_different_seeds_differ():
    profile = DetectorProfile('a', 0.7, 3.)
    assert _texts(_small(profile, seed=1)) != _texts(_small(profile, seed=2))


@pytest.mark.parametrize('seed', range(6))
@pytest.mark.parametrize('rate', [0., 2., 8.])
@pytest.mark.parametrize('hit', [0., 0.5, 1.])
def test_metrics_are_exact(hit, rate, seed):
    result = synth_generate(_small(DetectorProfile('d', hit, rate), seed=seed,
                                   n_volumes=122))
    stats = result.expected['d']
    assert stats.n_volumes == 122
    assert stats.fp_count == round(rate * 122)
    report = evaluate(result.detections['d'].by_volume(),
                      result.annotations.by_volume(), EvalConfig(), 'd')
    assert report.lesion_count == stats.lesion_count
    assert report.volume_count == 122
    assert report.mean_fp_per_volume == stats.mean_fp_per_volume
    for value in report.sensitivity_at.values():
        assert value == pytest.approx(100 * stats.sensitivity)
    if hit == 1.:
        assert set(report.sensitivity_at.values()) == {100.}
        assert report.map == pytest.approx(100.)
    elif hit == 0.:
        assert set(report.sensitivity_at.values()) == {0.}
        assert report.map == 0.


def test_full_size_perfect_detector():
    result = synth_generate(SynthConfig(profiles=(DetectorProfile('p', 1., 2.),)))
    assert len(result.dims) == 122
    report = evaluate(result.detections['p'].by_volume(),
                      result.annotations.by_volume(), EvalConfig(), 'p')
    assert report.map == pytest.approx(100.)
    assert all(v == pytest.approx(100.) for v in report.sensitivity_at.values())
    assert report.mean_fp_per_volume == pytest.approx(2.)


def test_detection_guards():
    result = synth_generate(_small(DetectorProfile('d', 0.8, 6.), seed=3))
    gt = {}
    for a in result.annotations.lesions:
        for s, b in a.boxes():
            gt.setdefault((a.volume_id, s), []).append(b)
    stats = result.expected['d']
    tps = fps = 0
    for d in result.detections['d'].records:
        overlaps = [iou(d.box, b) for b in gt.get((d.volume_id, d.slice_index), [])]
        if d.score >= 0.6:
            tps += 1
            assert max(overlaps) >= 0.25
        else:
            fps += 1
            assert all(o == 0 for o in overlaps)
    assert (tps, fps) == (stats.tp_count, stats.fp_count)


def test_lesion_layout():
    cfg = _small(DetectorProfile('d', 1., 0.), seed=11)
    result = synth_generate(cfg)
    per_volume = {}
    for a in result.annotations.lesions:
        per_volume[a.volume_id] = per_volume.get(a.volume_id, 0) + 1
        assert 1 <= len(a.extent) <= 5
        slices = a.slices
        assert slices == tuple(range(slices[0], slices[-1] + 1))
        assert slices[-1] < 10
    assert all(1 <= n <= 4 for n in per_volume.values())
    assert sorted(result.dims) == [f"vol{v:03d}" for v in range(20)]


@pytest.mark.parametrize('cfg', [
    SynthConfig(lesions_per_volume=(0, 4), image_dims=(128, 128, 10)),
    SynthConfig(slices_per_lesion=(1, 20), image_dims=(512, 512, 10)),
])
def test_capacity(cfg):
    with pytest.raises(CapacityError):
        synth_generate(cfg)


@pytest.mark.parametrize('kwargs', [
    dict(model_id="", hit_probability=0.5, fp_per_volume=1.),
    dict(model_id="a", hit_probability=1.5, fp_per_volume=1.),
    dict(model_id="a", hit_probability=0.5, fp_per_volume=-1.),
    dict(model_id="a", hit_probability=0.5, fp_per_volume=1., tp_score=(0.7, 0.6)),
    dict(model_id="a", hit_probability=0.5, fp_per_volume=1., fp_score=(0.5, 1.2)),
])
def test_invalid_profile(kwargs):
    with pytest.raises(ContractError):
        DetectorProfile(**kwargs)


def test_invalid_config():
    with pytest.raises(ContractError):
        SynthConfig(n_volumes=0)
    with pytest.raises(ContractError):
        SynthConfig(seed=-1)
    with pytest.raises(ContractError):
        SynthConfig(profiles=(DetectorProfile('a', 1., 0.),
                              DetectorProfile('a', 0., 1.)))


def test_yaml_config(tmp_path):
    path = tmp_path / "synth.yaml"
    path.write_text(
        "n_volumes: 12\n"
        "image_dims: [256, 256, 8]\n"
        "seed: 42\n"
        "profiles:\n"
        "  - model_id: VFNet\n"
        "    hit_probability: 0.8\n"
        "    fp_per_volume: 1.5\n"
        "  - model_id: DETR\n"
        "    hit_probability: 0.6\n"
        "    tp_score: [0.7, 0.9]\n",
        encoding='utf-8'
    )
    cfg = load_synth_config(str(path))
    assert cfg.n_volumes == 12
    assert cfg.image_dims == (256, 256, 8)
    assert cfg.seed == 42
    assert cfg.lesions_per_volume == (1, 4)
    assert [p.model_id for p in cfg.profiles] == ['VFNet', 'DETR']
    assert cfg.profiles[1].fp_per_volume == 0.
    assert cfg.profiles[1].tp_score == (0.7, 0.9)


def test_yaml_errors(tmp_path):
    unknown = tmp_path / "unknown.yaml"
    unknown.write_text("volumes: 3\n", encoding='utf-8')
    with pytest.raises(ValidationError) as e:
        load_synth_config(str(unknown))
    assert e.value.field == 'volumes'
    listing = tmp_path / "list.yaml"
    listing.write_text("- 1\n- 2\n", encoding='utf-8')
    with pytest.raises(ValidationError):
        load_synth_config(str(listing))
    bad = tmp_path / "bad.yaml"
    bad.write_text("profiles:\n  - model_id: a\n    hit_probability: 2\n",
                   encoding='utf-8')
    with pytest.raises(ValidationError):
        load_synth_config(str(bad))
    broken = tmp_path / "broken.yaml"
    broken.write_text("seed: 1\nn_volumes: [3\n", encoding='utf-8')
    with pytest.raises(ValidationError) as e:
        load_synth_config(str(broken))
    assert e.value.line is not None
    assert "YAML" in e.value.message
    latin = tmp_path / "latin.yaml"
    latin.write_bytes("seed: 1 # d\xe9faut\n".encode('latin-1'))
    with pytest.raises(ValidationError):
        load_synth_config(str(latin))
    assert synth_config_from({}) == SynthConfig()


def test_written_files(tmp_path):
    result = synth_generate(_small(DetectorProfile('a', 0.9, 2.),
                                   DetectorProfile('b', 0.5, 8.), seed=4))
    out = str(tmp_path / "set")
    write_synth(result, out)
    assert read_volume_dims(join(out, "volumes.jsonl")) == result.dims
    index = parse_inventory(join(out, "volumes.jsonl"))
    assert parse_annotations(join(out, "annotations.jsonl"), index) == result.annotations
    for model_id in ('a', 'b'):
        ds = parse_detections(join(out, f"detections_{model_id}.jsonl"), index)
        assert ds == result.detections[model_id]
    with open(join(out, "expected.json"), encoding='utf-8') as f:
        expected = load(f)
    for model_id, stats in result.expected.items():
        assert expected[model_id]['fp_count'] == stats.fp_count
        assert expected[model_id]['detected_lesions'] == stats.detected_lesions
        assert expected[model_id]['sensitivity'] == stats.sensitivity
