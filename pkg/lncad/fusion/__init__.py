# -*- coding: utf-8 -*-

"""'fusion' module contains duplicate reduction of detections."""

__all__ = [
    'DEFAULT_LABEL',
    'FUSED_MODEL_ID',
    'FusionMethod',
    'ScoreMode',
    'RescaleMode',
    'Detection',
    'FusionParams',
    'sort_key',
    'DetectionDataset',
    'check_detection',
    'merge_inventories',
    'nms',
    'soft_nms',
    'wbf',
    'fuse_group',
    'fuse_volume',
]
__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

from .detection import (
    DEFAULT_LABEL, FUSED_MODEL_ID, FusionMethod, ScoreMode, RescaleMode,
    Detection, FusionParams, sort_key,
)
from .dataset import DetectionDataset, check_detection, merge_inventories
from .nms import nms, soft_nms
from .wbf import wbf
from .volume_fusion import fuse_group, fuse_volume
