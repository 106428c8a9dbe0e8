# -*- coding: utf-8 -*-

"""Logger of LNCAD.

Records go to stderr, so stdout only carries command output.
"""

__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

import sys
from logging import (
    DEBUG, INFO, Formatter, FileHandler, StreamHandler, getLogger,
)
from .info import SYS_INFO

FORMAT = "[%(asctime)s] [%(funcName)s]:%(levelname)s: %(message)s"
logger = getLogger('lncad')


def sign_in_logger(debug_mode: bool = False, log_file: str = "") -> None:
    """Replace the handlers, then log the program information."""
    logger.setLevel(DEBUG if debug_mode else INFO)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()
    std_handler = StreamHandler(sys.stderr)
    std_handler.setFormatter(Formatter(FORMAT))
    logger.addHandler(std_handler)
    if log_file:
        file_handler = FileHandler(log_file, encoding='utf-8')
        file_handler.setFormatter(Formatter(FORMAT))
        logger.addHandler(file_handler)
    for info_str in SYS_INFO:
        logger.debug(info_str)
    logger.debug('-' * 7)
