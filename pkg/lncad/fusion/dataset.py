# -*- coding: utf-8 -*-

"""Validated detection collection."""

from __future__ import annotations

__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

from typing import Tuple, List, Dict, Mapping, Iterator, Iterable
from dataclasses import dataclass
from lncad.errors import ReferentialError
from .detection import Detection, sort_key

_Group = Tuple[str, int, str]


def check_detection(d: Detection, volume_index: Mapping[str, int]) -> None:
    """Detection must point at a slice of a known volume."""
    if d.volume_id not in volume_index:
        raise ReferentialError(f"unknown volume_id {d.volume_id!r}",
                               field='volume_id')
    if d.slice_index >= volume_index[d.volume_id]:
        raise ReferentialError(
            f"slice {d.slice_index} out of range for volume {d.volume_id!r} "
            f"with {volume_index[d.volume_id]} slices",
            field='slice_index'
        )


def merge_inventories(indices: Iterable[Mapping[str, int]]) -> Dict[str, int]:
    """Union of inventories which must agree on shared volumes."""
    merged: Dict[str, int] = {}
    for index in indices:
        for vid, nz in index.items():
            if merged.setdefault(vid, nz) != nz:
                raise ReferentialError(
                    f"volume {vid!r} has {merged[vid]} and {nz} slices "
                    f"in different inventories",
                    field='volume_id'
                )
    return merged


@dataclass(frozen=True)
class DetectionDataset:
    """Detections in input order plus the volume inventory.

    Iteration is canonical: volume, slice, descending score.
    """
    records: Tuple[Detection, ...]
    volume_index: Mapping[str, int]

    def __post_init__(self) -> None:
        for d in self.records:
            check_detection(d, self.volume_index)

    @classmethod
    def empty(cls, volume_index: Mapping[str, int]) -> DetectionDataset:
        return cls((), dict(volume_index))

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[Detection]:
        yield from sorted(
            self.records,
            key=lambda d: (d.volume_id, d.slice_index) + sort_key(d)
        )

    def canonical(self) -> DetectionDataset:
        """Same dataset with records stored in canonical order."""
        return DetectionDataset(tuple(self), self.volume_index)

    def model_ids(self) -> List[str]:
        return sorted({d.model_id for d in self.records})

    def by_volume(self) -> Dict[str, List[Detection]]:
        """Detections of every inventory volume, empty lists included."""
        out: Dict[str, List[Detection]] = {
            v: [] for v in sorted(self.volume_index)}
        for d in self:
            out[d.volume_id].append(d)
        return out

    def groups(self) -> Dict[_Group, List[Detection]]:
        """Detections per (volume, slice, label)."""
        out: Dict[_Group, List[Detection]] = {}
        for d in self:
            out.setdefault(d.group, []).append(d)
        return out
