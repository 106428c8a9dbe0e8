# -*- coding: utf-8 -*-

"""Lark parser for the list options of the command line.

+ Number lists: "0.5, 1, 2" or "0.5;1;2".
+ Name to value maps: "VFNet=51.1; FCOS=39.6".
"""

__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

from typing import Tuple, List, Dict
from lark import Lark, Transformer
from lark.exceptions import LarkError, VisitError
from lncad.errors import ContractError

_GRAMMAR = Lark(r"""
// Number
DIGIT: "0".."9"
INT: DIGIT+
SIGNED_INT: ["+" | "-"] INT
DECIMAL: INT "." INT? | "." INT
_EXP: ("e" | "E") SIGNED_INT
FLOAT: INT _EXP | DECIMAL _EXP?
NUMBER: FLOAT | INT
SIGNED_NUMBER: ["+" | "-"] NUMBER
number: SIGNED_NUMBER

// White space and new line
WS: /[ \t]+/
CR: /\r/
LF: /\n/
_NEWLINE: (CR? LF)+
%ignore WS

// Main grammar
_SEP: "," | ";" | _NEWLINE
NAME: /[^=,;\s][^=,;\r\n]*/
pair: NAME "=" number
numbers: number (_SEP number)* _SEP?
pairs: pair (_SEP pair)* _SEP?
""", start=['numbers', 'pairs'], parser='lalr')


class _Transformer(Transformer):
    """Transform into Python values."""

    @staticmethod
    def number(n: List[str]) -> float:
        return float(n[0])

    @staticmethod
    def numbers(n: List[float]) -> List[float]:
        return n

    @staticmethod
    def pair(n: Tuple[str, float]) -> Tuple[str, float]:
        return str(n[0]).strip(), n[1]

    @staticmethod
    def pairs(n: List[Tuple[str, float]]) -> Dict[str, float]:
        out: Dict[str, float] = {}
        for name, value in n:
            if name in out:
                raise ContractError(f"duplicated name: {name}")
            out[name] = value
        return out


_translator = _Transformer()


def parse_number_list(text: str) -> List[float]:
    """Parse numbers separated by commas, semicolons or new lines."""
    try:
        return _translator.transform(_GRAMMAR.parse(text, start='numbers'))
    except LarkError as e:
        raise ContractError(f"invalid number list {text!r}: {e}") from e


def parse_name_map(text: str) -> Dict[str, float]:
    """Parse "name=value" pairs."""
    try:
        return _translator.transform(_GRAMMAR.parse(text, start='pairs'))
    except VisitError as e:
        if isinstance(e.orig_exc, ContractError):
            raise e.orig_exc from e
        raise ContractError(f"invalid name map {text!r}: {e}") from e
    except LarkError as e:
        raise ContractError(f"invalid name map {text!r}: {e}") from e
