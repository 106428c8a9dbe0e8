# -*- coding: utf-8 -*-

"""'volume' module contains the slice preprocessing before inference."""

__all__ = [
    'Volume', 'SliceWindow', 'percentile_normalize', 'make_slice_windows',
    'read_tvol', 'write_tvol',
]
__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

from .volume import Volume, SliceWindow
from .preprocess import percentile_normalize, make_slice_windows
from .tvol import read_tvol, write_tvol
