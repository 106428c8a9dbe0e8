# -*- coding: utf-8 -*-

"""LNCAD: detection post-processing and evaluation for lymph node CAD."""

__all__ = ['__version__']
__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

__version__ = "0.1.0"
