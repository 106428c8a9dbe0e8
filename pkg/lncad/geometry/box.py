# -*- coding: utf-8 -*-

"""Axis-aligned boxes in continuous pixel coordinates.

+ Corner convention: area is (x2 - x1) * (y2 - y1), no +1 correction.
+ Degenerate boxes are rejected at construction.
"""

from __future__ import annotations

__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

from typing import Sequence, List
from math import isfinite
from dataclasses import dataclass
from lncad.errors import ContractError


@dataclass(frozen=True)
class Box2D:
    """Rectangle with strictly positive area."""
    x1: float
    y1: float
    x2: float
    y2: float

    def __post_init__(self) -> None:
        coords = (self.x1, self.y1, self.x2, self.y2)
        if not all(isfinite(c) for c in coords):
            raise ContractError(f"non-finite box coordinates: {coords}")
        if self.x2 <= self.x1 or self.y2 <= self.y1:
            raise ContractError(f"degenerate box: {coords}")

    @classmethod
    def from_sequence(cls, seq: Sequence[float]) -> Box2D:
        """Create from [x1, y1, x2, y2], Python ints are kept as ints."""
        if len(seq) != 4:
            raise ContractError(f"box needs 4 coordinates, got {len(seq)}")
        x1, y1, x2, y2 = (c if type(c) is int else float(c) for c in seq)
        return cls(x1, y1, x2, y2)

    def as_list(self) -> List[float]:
        return [self.x1, self.y1, self.x2, self.y2]

    @property
    def width(self) -> float:
        return self.x2 - self.x1

    @property
    def height(self) -> float:
        return self.y2 - self.y1

    def translate(self, dx: float, dy: float) -> Box2D:
        """Shift the box."""
        return Box2D(self.x1 + dx, self.y1 + dy, self.x2 + dx, self.y2 + dy)

    def scale(self, s: float) -> Box2D:
        """Scale about the origin."""
        if s <= 0:
            raise ContractError(f"scale must be positive: {s}")
        return Box2D(self.x1 * s, self.y1 * s, self.x2 * s, self.y2 * s)


def area(b: Box2D) -> float:
    """Area of the box."""
    return (b.x2 - b.x1) * (b.y2 - b.y1)


def intersection(a: Box2D, b: Box2D) -> float:
    """Overlap area, zero when disjoint."""
    w = min(a.x2, b.x2) - max(a.x1, b.x1)
    h = min(a.y2, b.y2) - max(a.y1, b.y1)
    if w <= 0 or h <= 0:
        return 0.
    return w * h


def iou(a: Box2D, b: Box2D) -> float:
    """Intersection over union."""
    if a == b:
        return 1.
    inter = intersection(a, b)
    if inter == 0:
        return 0.
    return inter / (area(a) + area(b) - inter)
