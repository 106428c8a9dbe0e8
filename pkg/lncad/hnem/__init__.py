# -*- coding: utf-8 -*-

"""'hnem' module contains hard negative example mining."""

__all__ = [
    'TP_IOU_THR', 'FALLBACK_FLOOR', 'MiningResult', 'select_hard_negatives',
    'mine_dataset',
]
__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

from .mining import (
    TP_IOU_THR, FALLBACK_FLOOR, MiningResult, select_hard_negatives,
    mine_dataset,
)
