# -*- coding: utf-8 -*-

"""'io' module contains file formats, synthetic test sets and reports."""

__all__ = [
    'DetectionDataset',
    'AnnotationDataset',
    'parse_inventory',
    'read_volume_dims',
    'slice_counts',
    'parse_detections',
    'parse_annotations',
    'format_detections',
    'format_annotations',
    'format_inventory',
    'dump_detections',
    'dump_annotations',
    'dump_inventory',
    'write_text',
    'parse_number_list',
    'parse_name_map',
    'DetectorProfile',
    'SynthConfig',
    'ExpectedStats',
    'SynthResult',
    'synth_generate',
    'synth_config_from',
    'load_synth_config',
    'write_synth',
    'REPORT_FORMAT',
    'render_report',
    'load_reports',
    'froc_dump',
    'read_froc',
    'plot_froc',
]
__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

from lncad.fusion.dataset import DetectionDataset
from lncad.evaluation.dataset import AnnotationDataset
from .jsonl import (
    parse_inventory, read_volume_dims, slice_counts, parse_detections,
    parse_annotations, format_detections, format_annotations,
    format_inventory, dump_detections, dump_annotations, dump_inventory,
    write_text,
)
from .option_parser import parse_number_list, parse_name_map
from .synth import (
    DetectorProfile, SynthConfig, ExpectedStats, SynthResult, synth_generate,
    synth_config_from, load_synth_config, write_synth,
)
from .report import REPORT_FORMAT, render_report, load_reports
from .froc_io import froc_dump, read_froc, plot_froc
