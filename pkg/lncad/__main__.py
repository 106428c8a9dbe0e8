# -*- coding: utf-8 -*-

"""Launch script from module level."""

from __future__ import annotations

__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

from typing import TYPE_CHECKING, Callable, Dict, List, Tuple, Optional, Sequence
from os import makedirs
from os.path import basename, join, splitext
from time import process_time
from .info import Arguments, parse_args, logger, sign_in_logger, build_parser

if TYPE_CHECKING:
    from .fusion import Detection
    from .evaluation import EvalConfig, LesionAnnotation

_ByVolume = Tuple[
    Dict[str, List["Detection"]],
    Dict[str, List["LesionAnnotation"]],
]


def _stem(path: str) -> str:
    return splitext(basename(path))[0]


def _eval_config(args: Arguments) -> EvalConfig:
    from .evaluation import EvalConfig, Interpolation, APMode, Protocol
    from .io import parse_number_list
    return EvalConfig(
        iou_thr=args.iou_thr,
        fp_targets=tuple(parse_number_list(args.fp_targets)),
        interpolation=Interpolation(args.interp),
        ap_mode=APMode(args.ap),
        protocol=Protocol(args.protocol),
    )


def _gate_maps(args: Arguments, reports: Sequence[str]) -> Dict[str, float]:
    from .errors import ContractError
    from .io import load_reports, parse_name_map
    maps: Dict[str, float] = {}
    for path in reports:
        for r in load_reports(path):
            if r.map is None:
                raise ContractError(f"report of {r.method_name} has no mAP")
            maps[r.method_name] = r.map
    if args.maps:
        maps.update(parse_name_map(args.maps))
    if not maps:
        raise ContractError("no mAP values given")
    return maps


def _fuse(args: Arguments) -> None:
    from .errors import ContractError
    from .fusion import (
        FusionMethod, FusionParams, ScoreMode, RescaleMode, fuse_volume,
    )
    from .evaluation import ensemble_gate
    from .io import parse_inventory, parse_detections, format_detections, write_text
    index = parse_inventory(args.volumes)
    datasets = [parse_detections(path, index) for path in args.inputs]
    if args.gate:
        selected = set(ensemble_gate(_gate_maps(args, [args.gate]),
                                     args.gate_threshold))
        kept = []
        for path, ds in zip(args.inputs, datasets):
            if selected.intersection(ds.model_ids()):
                kept.append(ds)
            else:
                logger.info(f"Skip {path}: no model passes the gate")
        if not kept:
            raise ContractError("no model passes the gate")
        datasets = kept
    params = FusionParams(
        iou_cluster_thr=args.wbf_iou,
        score_mode=ScoreMode(args.score_mode),
        rescale_mode=RescaleMode(args.rescale),
        soft_nms_sigma=args.sigma,
        nms_iou_thr=args.nms_iou,
    )
    fused = fuse_volume(datasets, params, FusionMethod(args.method),
                        inventory=index, workers=args.workers)
    write_text(format_detections(fused), args.output)


def _load_eval_inputs(args: Arguments) -> _ByVolume:
    from .io import parse_inventory, parse_detections, parse_annotations
    index = parse_inventory(args.volumes)
    dets = parse_detections(args.inputs[0], index)
    gt = parse_annotations(args.annotations, index)
    return dets.by_volume(), gt.by_volume()


def _evaluate(args: Arguments) -> None:
    from .evaluation import evaluate
    from .io import render_report, write_text
    dets, gt = _load_eval_inputs(args)
    report = evaluate(dets, gt, _eval_config(args),
                      args.name or _stem(args.inputs[0]),
                      workers=args.workers)
    write_text(render_report([report], args.format), args.output)


def _froc(args: Arguments) -> None:
    from .evaluation import froc, sensitivity_at_fp
    from .io import froc_dump, plot_froc
    dets, gt = _load_eval_inputs(args)
    cfg = _eval_config(args)
    curve = froc(dets, gt, cfg, workers=args.workers)
    froc_dump(curve, args.output)
    for t, s in sensitivity_at_fp(curve, cfg).items():
        logger.info(f"Sensitivity at {t:g} FP per volume: {100 * s:.1f}")
    if args.plot:
        plot_froc({_stem(args.inputs[0]): curve}, args.plot, cfg.fp_targets)


def _gate(args: Arguments) -> None:
    from .evaluation import ensemble_gate
    from .io import write_text
    selected = ensemble_gate(_gate_maps(args, args.inputs), args.threshold)
    write_text("".join(f"{name}\n" for name in selected))
    logger.info(f"{len(selected)} model(s) pass the {args.threshold:g}% gate")


def _mine_negatives(args: Arguments) -> None:
    from .hnem import mine_dataset
    from .io import (
        parse_inventory, parse_detections, parse_annotations,
        format_detections, write_text,
    )
    index = parse_inventory(args.volumes)
    dets = parse_detections(args.inputs[0], index)
    gt = parse_annotations(args.annotations, index)
    negatives, _ = mine_dataset(dets, gt, args.iou_thr, args.fallback_floor,
                                workers=args.workers)
    write_text(format_detections(negatives), args.output)


def _normalize(args: Arguments) -> None:
    from .volume import read_tvol, write_tvol, percentile_normalize
    volume, _ = read_tvol(args.inputs[0])
    out = percentile_normalize(volume, args.lo, args.hi)
    write_tvol(out, args.output, value_range=list(out.value_range or ()),
               percentiles=[args.lo, args.hi])


def _windows(args: Arguments) -> None:
    from .volume import Volume, read_tvol, write_tvol, make_slice_windows
    volume, _ = read_tvol(args.inputs[0])
    makedirs(args.output, exist_ok=True)
    stem = _stem(args.inputs[0])
    windows = make_slice_windows(volume)
    for w in windows:
        write_tvol(Volume.from_array(w.channels),
                   join(args.output, f"{stem}_w{w.center_index:04d}.tvol"),
                   center_index=w.center_index)
    logger.info(f"Saved {len(windows)} windows to {args.output}")


def _synth(args: Arguments) -> None:
    from dataclasses import replace
    from .io import SynthConfig, load_synth_config, synth_generate, write_synth
    cfg = load_synth_config(args.config) if args.config else SynthConfig()
    if args.seed is not None:
        cfg = replace(cfg, seed=args.seed)
    write_synth(synth_generate(cfg), args.output)


def _report(args: Arguments) -> None:
    from .io import load_reports, render_report, write_text
    reports = [r for path in args.inputs for r in load_reports(path)]
    write_text(render_report(reports, args.format), args.output)


_COMMANDS: Dict[str, Callable[[Arguments], None]] = {
    'fuse': _fuse,
    'evaluate': _evaluate,
    'froc': _froc,
    'gate': _gate,
    'mine-negatives': _mine_negatives,
    'normalize': _normalize,
    'windows': _windows,
    'synth': _synth,
    'report': _report,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Startup function, returns the exit code."""
    t0 = process_time()
    from logging import shutdown
    from .errors import LncadError
    from .thread import default_workers
    args = parse_args(argv)
    if args.cmd is None:
        build_parser().print_help()
        return 2
    sign_in_logger(args.debug_mode, args.log_file)
    if args.workers < 1:
        args.workers = default_workers()
    exit_code = 0
    try:
        _COMMANDS[args.cmd](args)
    except LncadError as e:
        logger.error(str(e))
        exit_code = 1
    except OSError as e:
        logger.error(f"{e.filename or ''}: {e.strerror or e}")
        exit_code = 1
    else:
        logger.info(f"Finished {args.cmd}: {process_time() - t0:.02f}s")
    shutdown()
    return exit_code


if __name__ == '__main__':
    from sys import exit
    exit(main())
