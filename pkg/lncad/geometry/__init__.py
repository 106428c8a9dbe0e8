# -*- coding: utf-8 -*-

"""'geometry' module contains axis-aligned box arithmetic."""

__all__ = ['Box2D', 'area', 'intersection', 'iou']
__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

from .box import Box2D, area, intersection, iou
