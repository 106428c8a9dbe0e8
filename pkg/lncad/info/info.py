# -*- coding: utf-8 -*-

"""Information.

+ Module versions.
+ Help descriptions.
"""

__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

from typing import Optional, Sequence, List, Union
from sys import version_info as _vi
from platform import system, release, machine, python_compiler
from argparse import ArgumentParser
from dataclasses import dataclass, field
from importlib.metadata import version
from lncad import __version__

SYS_INFO = (
    f"LNCAD {__version__}",
    f"OS Type: {system()} {release()} [{machine()}]",
    f"Python Version: {_vi.major}.{_vi.minor}.{_vi.micro}({_vi.releaselevel})",
    f"Python Compiler: {python_compiler()}",
    f"NumPy: {version('numpy')}",
)


@dataclass(repr=False, eq=False)
class Arguments:
    """Argument container."""
    cmd: Optional[str]
    debug_mode: bool = False
    log_file: str = ""
    workers: int = 0
    inputs: List[str] = field(default_factory=list)
    output: str = ""
    volumes: str = ""
    annotations: str = ""
    # fuse
    method: str = 'wbf'
    wbf_iou: float = 0.55
    nms_iou: float = 0.5
    sigma: float = 0.5
    rescale: str = 'count'
    score_mode: str = 'mean'
    gate: str = ""
    gate_threshold: float = 45.
    # evaluate / froc
    iou_thr: float = 0.25
    fp_targets: str = "0.5,1,2,4,6,8,16"
    interp: str = 'step'
    ap: str = '101'
    protocol: str = 'volumetric'
    name: str = ""
    format: str = 'table'
    plot: str = ""
    # gate
    threshold: float = 45.
    maps: str = ""
    # mine-negatives
    fallback_floor: float = 0.5
    # normalize
    lo: float = 1.
    hi: float = 99.
    # synth
    seed: Optional[int] = None
    config: str = ""


def _detection_inputs(p: ArgumentParser, nargs: Union[str, int] = '+') -> None:
    p.add_argument(
        'inputs',
        metavar="DETECTIONS",
        nargs=nargs,
        help="detections JSON Lines file(s)"
    )
    p.add_argument(
        '--volumes',
        metavar="FILE",
        required=True,
        help="volume inventory JSON Lines file"
    )


def _annotation_input(p: ArgumentParser) -> None:
    p.add_argument(
        '--annotations',
        metavar="FILE",
        required=True,
        help="ground truth annotations JSON Lines file"
    )


def _output(p: ArgumentParser, help_text: str, required: bool = False) -> None:
    p.add_argument(
        '-o',
        '--output',
        metavar="PATH",
        default="",
        required=required,
        help=help_text
    )


def _evaluation_options(p: ArgumentParser) -> None:
    g = p.add_argument_group("evaluation options")
    g.add_argument(
        '--iou-thr',
        type=float,
        default=0.25,
        help="IoU needed for a true positive, default is 0.25"
    )
    g.add_argument(
        '--fp-targets',
        metavar="LIST",
        default="0.5,1,2,4,6,8,16",
        help="FP per volume targets, such as \"0.5,1,2\""
    )
    g.add_argument(
        '--interp',
        choices=['step', 'linear'],
        default='step',
        help="sensitivity lookup between operating points"
    )
    g.add_argument(
        '--ap',
        choices=['101', 'all'],
        default='101',
        help="101-point or all-points interpolated AP"
    )
    g.add_argument(
        '--protocol',
        choices=['volumetric', 'key-slice'],
        default='volumetric',
        help="match against the full 3D extent or key slices only"
    )


def build_parser() -> ArgumentParser:
    """Command line surface."""
    parser = ArgumentParser(
        prog='lncad',
        description=(
            f"LNCAD {__version__} - "
            f"Detection Post-processing and Lesion-level Evaluation "
            f"for Lymph Node CAD"
        ),
        epilog=f"{__copyright__} {__license__} {__author__}",
    )
    main_info = parser.add_argument_group("information options")
    main_info.add_argument(
        '-v',
        '--version',
        action='version',
        version=SYS_INFO[0]
    )
    main_info.add_argument(
        '-d',
        '--debug-mode',
        action='store_true',
        help="change the logger from INFO into DEBUG level"
    )
    main_info.add_argument(
        '--log-file',
        metavar="FILE",
        default="",
        help="also write the log into a file"
    )
    main_info.add_argument(
        '-j',
        '--workers',
        metavar="N",
        type=int,
        default=0,
        help="worker threads for per-volume jobs, "
             "default is the number of physical cores"
    )
    s = parser.add_subparsers(title="CLI command", dest='cmd')

    fuse_cmd = s.add_parser('fuse', help="fuse detections of one or more models")
    _detection_inputs(fuse_cmd)
    _output(fuse_cmd, "fused detections file, default is stdout")
    fuse_opt = fuse_cmd.add_argument_group("fusion options")
    fuse_opt.add_argument(
        '--method',
        choices=['nms', 'soft-nms', 'wbf'],
        default='wbf',
        help="duplicate reduction method, default is wbf"
    )
    fuse_opt.add_argument('--wbf-iou', type=float, default=0.55,
                          help="WBF cluster IoU threshold")
    fuse_opt.add_argument('--nms-iou', type=float, default=0.5,
                          help="NMS suppression IoU threshold")
    fuse_opt.add_argument('--sigma', type=float, default=0.5,
                          help="Soft-NMS Gaussian sigma")
    fuse_opt.add_argument(
        '--rescale',
        choices=['none', 'count'],
        default='count',
        help="scale WBF scores by min(members, models) / models"
    )
    fuse_opt.add_argument('--score-mode', choices=['mean', 'max'],
                          default='mean', help="WBF cluster score")
    fuse_opt.add_argument(
        '--gate',
        metavar="REPORTS",
        default="",
        help="only fuse models whose report passes the mAP gate"
    )
    fuse_opt.add_argument('--gate-threshold', type=float, default=45.,
                          help="mAP gate in percent, default is 45")

    eval_cmd = s.add_parser('evaluate', help="mAP and FROC sensitivities")
    _detection_inputs(eval_cmd, 1)
    _annotation_input(eval_cmd)
    _evaluation_options(eval_cmd)
    eval_cmd.add_argument('--name', default="",
                          help="method name, default is the file stem")
    eval_cmd.add_argument('--format', choices=['table', 'csv', 'json'],
                          default='table', help="report format")
    _output(eval_cmd, "report file, default is stdout")

    froc_cmd = s.add_parser('froc', help="dump the FROC curve as CSV")
    _detection_inputs(froc_cmd, 1)
    _annotation_input(froc_cmd)
    _evaluation_options(froc_cmd)
    _output(froc_cmd, "curve CSV file", required=True)
    froc_cmd.add_argument('--plot', metavar="IMAGE", default="",
                          help="also draw the curve into an image")

    gate_cmd = s.add_parser('gate', help="select ensemble members by mAP")
    gate_cmd.add_argument('inputs', metavar="REPORTS", nargs='*',
                          help="JSON report files")
    gate_cmd.add_argument('--maps', default="",
                          help="inline mAP list, such as \"VFNet=51.1; FCOS=39.6\"")
    gate_cmd.add_argument('--threshold', type=float, default=45.,
                          help="mAP gate in percent, default is 45")

    mine_cmd = s.add_parser('mine-negatives', help="select hard negatives")
    _detection_inputs(mine_cmd, 1)
    _annotation_input(mine_cmd)
    mine_cmd.add_argument('--iou-thr', type=float, default=0.25,
                          help="IoU needed for a true positive")
    mine_cmd.add_argument('--fallback-floor', type=float, default=0.5,
                          help="score floor of volumes without true positives")
    _output(mine_cmd, "negatives file, default is stdout")

    norm_cmd = s.add_parser(
        'normalize',
        help="percentile intensity normalization of a bias-corrected volume"
    )
    norm_cmd.add_argument('inputs', metavar="VOLUME", nargs=1,
                          help="input .tvol file")
    norm_cmd.add_argument('--lo', type=float, default=1.,
                          help="lower percentile")
    norm_cmd.add_argument('--hi', type=float, default=99.,
                          help="upper percentile")
    _output(norm_cmd, "output .tvol file", required=True)

    win_cmd = s.add_parser('windows', help="3-slice windows of a volume")
    win_cmd.add_argument('inputs', metavar="VOLUME", nargs=1,
                         help="input .tvol file")
    _output(win_cmd, "output folder", required=True)

    synth_cmd = s.add_parser('synth', help="generate a synthetic test set")
    synth_cmd.add_argument('--seed', type=int, default=None,
                           help="override the seed of the config")
    synth_cmd.add_argument('--config', metavar="YAML", default="",
                           help="synthetic config, default is the built-in one")
    _output(synth_cmd, "output folder", required=True)

    report_cmd = s.add_parser('report', help="render JSON reports")
    report_cmd.add_argument('inputs', metavar="REPORTS", nargs='+',
                            help="JSON report files")
    report_cmd.add_argument('--format', choices=['table', 'csv', 'json'],
                            default='table', help="report format")
    _output(report_cmd, "output file, default is stdout")
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> Arguments:
    args = vars(build_parser().parse_args(argv))
    if isinstance(args.get('inputs'), str):
        args['inputs'] = [args['inputs']]
    elif args.get('inputs') is None:
        args['inputs'] = []
    return Arguments(**args)
