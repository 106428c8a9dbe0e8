# -*- coding: utf-8 -*-

"""'evaluation' module contains the lesion-level detection metrics."""

__all__ = [
    'FP_TARGETS',
    'Interpolation',
    'APMode',
    'Protocol',
    'LesionAnnotation',
    'EvalConfig',
    'DetectionMatch',
    'LesionMatch',
    'MatchResult',
    'match_detections',
    'FrocPoint',
    'FrocCurve',
    'match_volumes',
    'curve_from_matches',
    'froc',
    'sensitivity_at_fp',
    'ap_from_matches',
    'average_precision',
    'GATE_THRESHOLD',
    'ensemble_gate',
    'EvalReport',
    'evaluate',
    'AnnotationDataset',
    'check_lesion',
]
__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

from .annotation import (
    FP_TARGETS, Interpolation, APMode, Protocol, LesionAnnotation, EvalConfig,
)
from .matching import DetectionMatch, LesionMatch, MatchResult, match_detections
from .froc import (
    FrocPoint, FrocCurve, match_volumes, curve_from_matches, froc,
    sensitivity_at_fp,
)
from .ap import ap_from_matches, average_precision
from .gate import GATE_THRESHOLD, ensemble_gate
from .report import EvalReport, evaluate
from .dataset import AnnotationDataset, check_lesion
