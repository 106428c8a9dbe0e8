# -*- coding: utf-8 -*-

"""'info' module contains LNCAD program information."""

__all__ = [
    'SYS_INFO', 'Arguments', 'build_parser', 'parse_args', 'logger',
    'sign_in_logger',
]
__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

from .info import SYS_INFO, Arguments, build_parser, parse_args
from .logging_handler import logger, sign_in_logger
