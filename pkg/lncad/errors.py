# -*- coding: utf-8 -*-

"""Exceptions raised by LNCAD."""

__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

from typing import Optional


class LncadError(Exception):
    """Base class of all LNCAD errors."""


class ContractError(LncadError, ValueError):
    """Precondition of an operation is violated."""


class ValidationError(LncadError, ValueError):
    """Invalid record, addressed by file, line and field."""

    def __init__(
        self,
        message: str,
        *,
        path: str = "",
        line: Optional[int] = None,
        field: str = ""
    ):
        super(ValidationError, self).__init__(message)
        self.message = message
        self.path = path
        self.line = line
        self.field = field

    def __str__(self) -> str:
        prefix = self.path
        if self.line is not None:
            prefix += f":{self.line}"
        if self.field:
            prefix += f": {self.field}"
        return f"{prefix}: {self.message}" if prefix else self.message


class RecordParseError(ValidationError):
    """The line is not a JSON object."""


class ReferentialError(ValidationError):
    """The record points at a volume or slice that does not exist."""


class CapacityError(LncadError):
    """Synthetic configuration cannot be realized."""


class UndefinedMetricError(LncadError, ArithmeticError):
    """Metric has no denominator."""
